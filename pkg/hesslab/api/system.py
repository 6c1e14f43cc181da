"""API routes for system status."""

import logging
import time
import psutil
from fastapi import APIRouter, HTTPException
from hesslab.config import settings
from hesslab.schemas import SystemStatus

logger = logging.getLogger(__name__)
router = APIRouter()

# Track application start time
start_time = time.time()


@router.get("/status", response_model=SystemStatus)
async def get_system_status():
    """Process metrics and the effective enumeration settings."""
    try:
        memory = psutil.virtual_memory()
        return {
            "healthy": True,
            "version": settings.app_version,
            "uptime_seconds": int(time.time() - start_time),
            "cpu_percent": psutil.cpu_percent(interval=None),
            "memory_percent": memory.percent,
            "threads": settings.threads,
            "oracle_budget": settings.oracle_budget,
            "count_budget": settings.count_budget,
        }
    except Exception as e:
        logger.error(f"Error getting system status: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")
