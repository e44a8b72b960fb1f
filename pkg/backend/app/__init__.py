# spectraham HTTP service
