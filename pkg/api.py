import logging

from fastapi import FastAPI, HTTPException

import settings
from entity.api_models import (
    MatchRequest,
    MatchResponse,
    StatsRequest,
    StatsResponse,
    TrianglesRequest,
    TrianglesResponse,
)
from errors import DictionaryParseError, GapMatchError, UnknownVertexError
from service.match_service import MatchService
from service.triangle_service import TriangleService
from triangles import graph_from_edges

logging.basicConfig(level=settings.LOG_LEVEL)
logger = logging.getLogger(__name__)

app = FastAPI(
    title="Gapped Dictionary Matching API",
    description="Dictionary statistics, online matching of one-gap patterns and triangle queries.",
)


def _to_http(e: GapMatchError) -> HTTPException:
    if isinstance(e, DictionaryParseError):
        return HTTPException(status_code=422, detail=str(e))
    if isinstance(e, UnknownVertexError):
        return HTTPException(status_code=404, detail=str(e))
    return HTTPException(status_code=400, detail=str(e))


@app.get("/health", summary="Liveness check")
def health():
    return {"status": "ok"}


@app.post("/stats", response_model=StatsResponse, summary="Dictionary statistics")
def dictionary_stats(request: StatsRequest):
    """
    Parses the dictionary and returns its statistics together with the G_D figures
    (degeneracy, heavy threshold, heavy counts) and the suggested engine.
    """
    service = MatchService()
    try:
        return service.stats(service.load(request.dictionary))
    except GapMatchError as e:
        raise _to_http(e)


@app.post("/match", response_model=MatchResponse, summary="Match a text against a dictionary")
def match_text(request: MatchRequest):
    """
    Runs the whole text through a fresh engine and returns every occurrence, the engine
    summary and the work counters.
    """
    service = MatchService()
    try:
        patterns = service.load(request.dictionary)
        return service.match(patterns, request.text, engine=request.engine, witnesses=request.witnesses)
    except GapMatchError as e:
        raise _to_http(e)


@app.post("/triangles", response_model=TrianglesResponse, summary="Triangle queries")
def list_triangles(request: TrianglesRequest):
    if request.vertex is None and not request.all:
        raise HTTPException(status_code=400, detail="Provide a query vertex or set all=true.")
    try:
        graph = graph_from_edges(request.edges)
        found = TriangleService().query(
            graph, vertex=request.vertex, everything=request.all, bounded=request.bounded, alpha=request.alpha
        )
    except GapMatchError as e:
        raise _to_http(e)
    return TrianglesResponse(triangles=found)
