"""API routes for Hessenberg fiber polynomials."""

import logging
from fastapi import APIRouter, HTTPException
from hesslab.schemas import FiberRequest, FiberResponse, Partition
from hesslab.services.hessenberg_service import hessenberg_service

logger = logging.getLogger(__name__)
router = APIRouter()


@router.post("/fiber", response_model=FiberResponse)
async def get_fiber(request: FiberRequest):
    """Paving polynomial of a fiber, evaluated at q when given."""
    try:
        partition = Partition(parts=tuple(sorted(request.partition, reverse=True)))
        poly = hessenberg_service.fiber_poincare(request.flavor, request.m, request.N, partition)
        return FiberResponse(
            flavor=request.flavor,
            m=request.m,
            N=request.N,
            partition=list(partition.parts),
            coeffs=list(poly.coeffs),
            polynomial=str(poly),
            value=poly.evaluate(request.q) if request.q is not None else None,
        )
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error computing fiber for {request}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")
