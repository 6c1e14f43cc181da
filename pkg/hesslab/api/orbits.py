"""API routes for nilpotent orbit data."""

import logging
from typing import Any, Dict, List
from fastapi import APIRouter, HTTPException, Query
from hesslab.schemas import Partition
from hesslab.services.orbit_service import orbit_service

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/closure", response_model=List[List[int]])
async def get_closure(parts: List[int] = Query(..., description="Parts of the partition")):
    """Order-3 partitions in the closure of the orbit of `parts`."""
    try:
        partition = Partition(parts=tuple(sorted(parts, reverse=True)))
        return [list(p.parts) for p in orbit_service.image_closure(partition)]
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing closure of {parts}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")


@router.get("/{n}", response_model=List[Dict[str, Any]])
async def list_orbits(n: int):
    """Orbit table of N_1^3 for N = 2n+1."""
    try:
        return orbit_service.orbit_table(n)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error listing orbits for n={n}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")
