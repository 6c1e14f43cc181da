"""Main application entry point."""

import logging
import sys
from contextlib import asynccontextmanager
from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware
import uvicorn
from hesslab.config import settings
from hesslab.api import hessenberg, monodromy, orbits, springer, system

# Setup logging
logging.basicConfig(
    level=getattr(logging, settings.log_level.upper()),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=[logging.StreamHandler(sys.stdout)]
)

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    logger.info(f"Starting {settings.app_name} {settings.app_version}...")
    logger.info(
        f"Enumeration settings: threads={settings.threads}, "
        f"oracle_budget={settings.oracle_budget}, count_budget={settings.count_budget}"
    )

    yield

    logger.info("Shutdown complete")


# Create FastAPI app
app = FastAPI(
    title=settings.app_name,
    version=settings.app_version,
    lifespan=lifespan
)

# Setup CORS
app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.cors_origins,
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

# Include routers
app.include_router(orbits.router, prefix="/api/orbits", tags=["orbits"])
app.include_router(monodromy.router, prefix="/api/monodromy", tags=["monodromy"])
app.include_router(hessenberg.router, prefix="/api/hessenberg", tags=["hessenberg"])
app.include_router(springer.router, prefix="/api/springer", tags=["springer"])
app.include_router(system.router, prefix="/api/system", tags=["system"])


@app.get("/")
async def read_root():
    """Service banner."""
    return {"message": f"{settings.app_name} API", "version": settings.app_version}


@app.get("/api/health")
async def health_check():
    """Health check endpoint."""
    return {
        "status": "healthy",
        "version": settings.app_version
    }


if __name__ == "__main__":
    uvicorn.run(
        app,
        host=settings.host,
        port=settings.port,
        log_level=settings.log_level.lower()
    )
