import logging
from typing import List, Optional

from errors import UnknownVertexError
from triangles import QueryGraph, Triangle, all_triangles, vertex_triangles, vertex_triangles_bounded

logger = logging.getLogger(__name__)


class TriangleService:
    """
    Service class for triangle queries over one graph.
    """

    def query(
        self,
        graph: QueryGraph,
        vertex: Optional[int] = None,
        everything: bool = False,
        bounded: bool = False,
        alpha: int = 0,
    ) -> List[Triangle]:
        """
        Lists triangles through `vertex`, or every triangle when `everything` is set.

        Args:
            graph: The query graph.
            vertex: Query vertex; ignored when `everything` is set.
            everything: List all triangles once.
            bounded: Route queries through the tripartite form and the bounded ISG engine.
            alpha: Number of dummy vertices between the two neighbor copies (bounded only).

        Returns:
            Sorted vertex triples.
        """
        if everything:
            found = all_triangles(graph, bounded=bounded, alpha=alpha)
        elif vertex is None:
            raise ValueError("either a query vertex or everything=True is required")
        else:
            try:
                if bounded:
                    found = vertex_triangles_bounded(graph, vertex, alpha)
                else:
                    found = vertex_triangles(graph, vertex)
            except UnknownVertexError as e:
                logger.warning("Triangle query for an unknown vertex: %s", e)
                raise
        logger.info("Triangle query found %d triangles", len(found))
        return found
