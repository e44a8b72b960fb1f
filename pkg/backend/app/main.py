import logging

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from spectraham import __version__

from .core.config import settings
from .api import spectra, families, theorems

logging.basicConfig(level=logging.DEBUG if settings.DEBUG else logging.INFO)

app = FastAPI(
    title=settings.APP_NAME,
    description="Spectral radii, extremal families and Hamiltonicity theorem checks",
    version=__version__,
)

# CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.CORS_ORIGINS,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(spectra.router, prefix="/api/spectra", tags=["Spectra"])
app.include_router(families.router, prefix="/api/families", tags=["Families"])
app.include_router(theorems.router, prefix="/api/theorems", tags=["Theorems"])


@app.get("/api")
async def api_root():
    return {
        "name": settings.APP_NAME,
        "version": __version__,
        "status": "operational"
    }


@app.get("/health")
async def health():
    return {"status": "healthy"}
