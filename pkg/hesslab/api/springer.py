"""API routes for the Fourier matching map."""

import logging
from typing import Any, Dict, List
from fastapi import APIRouter, HTTPException
from hesslab.services.springer_service import springer_service

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/{n}/map", response_model=List[Dict[str, Any]])
async def get_map(n: int):
    """Images of every E_ij and Etilde_ij."""
    try:
        return [img.to_row() for img in springer_service.full_map(n)]
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building the map for n={n}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")


@router.get("/{n}/report", response_model=Dict[str, Any])
async def get_report(n: int):
    """Consistency report for N = 2n+1."""
    try:
        return springer_service.consistency_suite(n).to_row()
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error running the consistency suite for n={n}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")
