"""
Orientation-based online DMOG engines.

Per text character: the automaton produces an ArrivalEvent; the reporting core expires and
activates L-arrivals, every arriving second subpattern v reports its edges for the window
[i - |v| - beta_e, i - |v| - alpha_e], and finally the position's deepest first subpattern
is queued. Its suffix-tree ancestors arrive with it.
"""
import logging
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import settings
from automaton import ROOT, Automaton
from counters import WorkCounter
from dictionary import compute_stats
from entity.occurrence import EngineConfig, EngineKind, EngineSummary, Occurrence, ReportMode
from entity.pattern import GappedPattern, Regime
from errors import EngineConfigError, StreamClosedError
from graph_core import Orientation, build_graph, degeneracy_orient
from isg import ReportingCore

logger = logging.getLogger(__name__)

PositionCallback = Callable[[int, List[Occurrence]], None]


class DmogEngine:
    kind = EngineKind.ORIENTATION

    def __init__(
        self,
        patterns: Sequence[GappedPattern],
        config: Optional[EngineConfig] = None,
        mode: Optional[ReportMode] = None,
        automaton: Optional[Automaton] = None,
    ):
        self.patterns = list(patterns)
        self.stats = compute_stats(self.patterns)
        if config is None:
            config = EngineConfig.for_stats(
                self.stats, engine=self.kind, max_window_span=settings.MAX_WINDOW_SPAN
            )
        if mode is not None:
            config = config.model_copy(update={"mode": mode})
        self._check_regime(config)
        self.config = config
        self.mode = config.mode

        self.automaton = automaton or Automaton(self.patterns)
        self.graph = build_graph(self.patterns)
        self.tree = self.automaton.suffix_tree()
        self.shift = [len(label) for label in self.graph.right_labels]
        self.counter = WorkCounter()
        self.degeneracy_orientation, self.degeneracy = degeneracy_orient(self.graph)
        self.orientation = self._orient()
        self.core = ReportingCore(
            self.graph,
            self.orientation,
            config.regime,
            config.mode,
            shift=self.shift,
            counter=self.counter,
            path=self.tree.path,
            alpha=config.alpha,
            beta=config.beta,
            max_shift=self.stats.M,
        )
        self._attach_heavy()
        self.static_space = (
            self.automaton.states + self.graph.left_count + self.graph.right_count + self.graph.d
        )

        self.state = ROOT
        self.position = 0
        self.closed = False

    def _check_regime(self, config: EngineConfig) -> None:
        # any dictionary runs on the non-uniform mechanisms
        if config.regime not in (self.stats.regime, Regime.NON_UNIFORM):
            raise EngineConfigError(
                f"dictionary regime is {self.stats.regime.value}, engine configured for {config.regime.value}"
            )
        if config.regime == Regime.UNIFORM:
            mismatched = [
                p.id for p in self.patterns
                if not p.gapless and (p.gap.alpha, p.gap.beta) != (config.alpha, config.beta)
            ]
            if mismatched:
                raise EngineConfigError(f"patterns {mismatched[:5]} do not use gap {{{config.alpha},{config.beta}}}")

    def _orient(self) -> Orientation:
        return self.degeneracy_orientation

    def _attach_heavy(self) -> None:
        pass

    def step(self, symbol: int) -> List[Occurrence]:
        """Consumes one byte and returns every occurrence ending at the new position."""
        if self.closed:
            raise StreamClosedError("the text stream was finished; build a new engine")
        self.position += 1
        i = self.position
        self.state, event = self.automaton.step(self.state, symbol, i)
        self.core.advance(i)

        hits = []
        for v, _ in event.r_arrivals:
            hits.extend(self.core.report(v, i))
        self.core.push(i, event.deepest_left)

        edges = self.graph.edges
        occurrences = [Occurrence(pattern_id=pid, end_pos=i) for pid in event.gapless]
        occurrences.extend(
            Occurrence(pattern_id=edges[eid].pattern_id, end_pos=i, witness_j=j) for eid, j in hits
        )
        occurrences.sort(key=Occurrence.sort_key)
        self.counter.close_step(len(occurrences))
        self.counter.observe_space(self.static_space + self.core.live_space())
        return occurrences

    def run(
        self,
        text: Union[bytes, str, Iterable[int]],
        on_position: Optional[PositionCallback] = None,
    ) -> Iterator[Tuple[int, List[Occurrence]]]:
        """
        Yields (position, occurrences) per character. The next character is pulled from
        `text` only after the caller resumed the generator.
        """
        if isinstance(text, str):
            text = text.encode("utf-8")
        for symbol in text:
            occurrences = self.step(symbol)
            if on_position is not None:
                on_position(self.position, occurrences)
            yield self.position, occurrences

    def finish(self) -> None:
        self.closed = True
        logger.info("Stream finished after %d characters", self.position)

    def summary(self) -> EngineSummary:
        return EngineSummary(
            engine=self.kind,
            regime=self.config.regime,
            mode=self.mode,
            states=self.automaton.states,
            dense_goto=self.automaton.dense,
            left_vertices=self.graph.left_count,
            right_vertices=self.graph.right_count,
            edges=self.graph.d,
            degeneracy=self.degeneracy,
        )


class OrientationEngine(DmogEngine):
    """Every edge handled by the degeneracy orientation."""


def dmog_step(engine: DmogEngine, character: Union[int, bytes]) -> List[Occurrence]:
    if isinstance(character, (bytes, bytearray)):
        if len(character) != 1:
            raise ValueError("dmog_step takes exactly one byte")
        character = character[0]
    return engine.step(character)


def dmog_run(
    engine: DmogEngine,
    text: Union[bytes, str, Iterable[int]],
    on_position: Optional[PositionCallback] = None,
) -> Iterator[Tuple[int, List[Occurrence]]]:
    return engine.run(text, on_position)


def match_all(engine: DmogEngine, text: Union[bytes, str, Iterable[int]]) -> List[Occurrence]:
    """Runs the whole text and closes the stream."""
    out = []
    for _, occurrences in engine.run(text):
        out.extend(occurrences)
    engine.finish()
    return out
