import logging
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import settings
from automaton import Automaton
from dictionary import compute_stats, parse_dictionary
from dmog_engine import DmogEngine, OrientationEngine, PositionCallback
from entity.api_models import MatchResponse, StatsResponse
from entity.occurrence import EngineConfig, EngineKind, Occurrence, ReportMode
from entity.pattern import GappedPattern
from graph_core import build_graph, classify_heavy, degeneracy_orient
from threshold_engine import ThresholdEngine

logger = logging.getLogger(__name__)

ENGINES = {
    EngineKind.ORIENTATION: OrientationEngine,
    EngineKind.THRESHOLD: ThresholdEngine,
}


class MatchService:
    """
    Service class shared by the CLI and the HTTP API: dictionary statistics and
    streaming matches.
    """

    def load(self, dictionary: Union[str, Iterable[str]]) -> List[GappedPattern]:
        return parse_dictionary(dictionary)

    def stats(self, patterns: Sequence[GappedPattern]) -> StatsResponse:
        """
        Computes the dictionary statistics and the graph figures behind engine choice.

        Args:
            patterns: The parsed dictionary.

        Returns:
            A StatsResponse; `suggested_engine` is threshold when the degeneracy of G_D
            reaches sqrt(d / lsc).
        """
        stats = compute_stats(patterns)
        graph = build_graph(patterns)
        _, delta = degeneracy_orient(graph)
        split = classify_heavy(graph, max(1, stats.lsc))
        automaton = Automaton(patterns)
        suggested = EngineKind.THRESHOLD if graph.d and delta * delta * max(1, stats.lsc) >= graph.d else EngineKind.ORIENTATION
        return StatsResponse(
            **stats.model_dump(exclude={"has_unbounded"}),
            left_vertices=graph.left_count,
            right_vertices=graph.right_count,
            degeneracy=delta,
            theta=split.theta,
            heavy_left=split.heavy_left_count,
            heavy_right=split.heavy_right_count,
            automaton_states=automaton.states,
            dense_goto=automaton.dense,
            suggested_engine=suggested,
        )

    def build_engine(
        self,
        patterns: Sequence[GappedPattern],
        engine: EngineKind = EngineKind.ORIENTATION,
        mode: ReportMode = ReportMode.DEDUP,
    ) -> DmogEngine:
        config = EngineConfig.for_stats(
            compute_stats(patterns), engine=engine, mode=mode, max_window_span=settings.MAX_WINDOW_SPAN
        )
        return ENGINES[engine](patterns, config=config)

    def stream(
        self,
        engine: DmogEngine,
        text: Union[bytes, Iterable[int]],
        on_position: Optional[PositionCallback] = None,
    ) -> Iterator[Tuple[int, List[Occurrence]]]:
        """Streams (position, occurrences) and closes the engine once the text is exhausted."""
        yield from engine.run(text, on_position)
        engine.finish()

    def match(
        self,
        patterns: Sequence[GappedPattern],
        text: Union[bytes, str],
        engine: EngineKind = EngineKind.ORIENTATION,
        witnesses: bool = False,
    ) -> MatchResponse:
        """
        Runs a whole text through a fresh engine.

        Args:
            patterns: The parsed dictionary.
            text: Text to scan; strings are UTF-8 encoded.
            engine: Which engine to run.
            witnesses: Report one record per witness instead of one per (pattern, end).

        Returns:
            A MatchResponse with the occurrences, the engine summary and the work counters.
        """
        if isinstance(text, str):
            text = text.encode("utf-8")
        dmog = self.build_engine(patterns, engine, ReportMode.WITNESS if witnesses else ReportMode.DEDUP)
        occurrences = [o for _, found in self.stream(dmog, text) for o in found]
        logger.info("Matched %d characters: %d occurrences", len(text), len(occurrences))
        return MatchResponse(occurrences=occurrences, summary=dmog.summary(), counters=dmog.counter.summary())
