"""API routes for monodromy decompositions and the catalog."""

import logging
from typing import Any, Dict, List
from fastapi import APIRouter, HTTPException
from hesslab.schemas import DecompositionResponse
from hesslab.services.monodromy_service import monodromy_service

logger = logging.getLogger(__name__)
router = APIRouter()


@router.get("/{n}/decompose", response_model=DecompositionResponse)
async def decompose(n: int, m: int, tilde: bool = False):
    """Decompose primitive cohomology of X_m (or the sigma = -id part for Xtilde_m)."""
    try:
        return monodromy_service.decomposition_report(2 * n + 1, m, tilde)
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error decomposing n={n}, m={m}, tilde={tilde}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")


@router.get("/{n}/catalog", response_model=List[Dict[str, Any]])
async def get_catalog(n: int):
    """Pairwise non-isomorphic local systems for N = 2n+1."""
    try:
        return [label.to_row() for label in monodromy_service.catalog(2 * n + 1)]
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error building catalog for n={n}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")


@router.get("/{n}/identifications", response_model=List[Dict[str, Any]])
async def get_identifications(n: int):
    """Coincidences between the named families."""
    try:
        return [
            {"left": pair.left.to_row(), "right": pair.right.to_row()}
            for pair in monodromy_service.identifications(2 * n + 1)
        ]
    except ValueError as e:
        raise HTTPException(status_code=400, detail=str(e))
    except Exception as e:
        logger.error(f"Error listing identifications for n={n}: {e}")
        raise HTTPException(status_code=500, detail="Internal server error")
