"""
gwkit Types

Configuration specs, enums and report models. Everything that crosses the JSON
boundary (config files, reports) is defined here.
"""

from enum import Enum
from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

# ============================================================================
# Enums
# ============================================================================


class Verdict(str, Enum):
    """Three-valued outcome of a decision procedure"""

    TRUE = "true"
    FALSE = "false"
    INCONCLUSIVE = "inconclusive"


class SuiteName(str, Enum):
    """Verification suites the runner knows about"""

    NORMAL_FORM = "normal-form"
    SYLLABLE_BOUNDS = "syllable-bounds"
    LENGTH_FUNCTIONS = "length-functions"
    MMAP_INEQUALITIES = "mmap-inequalities"
    COMMUTATOR = "commutator"
    CROSSED_COMMUTATOR = "crossed-commutator"
    MIXING_SUPPORT = "mixing-support"
    QUOTIENT = "quotient"
    HYPOTHESES = "hypotheses"


class ActionFamily(str, Enum):
    """Built-in group actions on graphs"""

    TRIVIAL = "trivial"
    NATURAL = "natural"
    ROTATION = "rotation"
    SHIFT = "shift"
    LEFT_MULT = "left_mult"


# ============================================================================
# Graph specs
# ============================================================================


class FiniteGraphSpec(BaseModel):
    """Explicit finite graph, by undirected edge list or by adjacency lists"""

    type: Literal["finite"] = "finite"
    edges: Optional[List[Tuple[int, int]]] = Field(
        default=None, description="Undirected edges as vertex pairs"
    )
    adjacency: Optional[Dict[int, List[int]]] = Field(
        default=None, description="Neighbor lists; must be symmetric"
    )
    vertices: Optional[List[int]] = Field(
        default=None, description="Vertex list, needed for isolated vertices"
    )

    @model_validator(mode="after")
    def _one_source(self) -> "FiniteGraphSpec":
        if self.edges is None and self.adjacency is None and self.vertices is None:
            raise ValueError("finite graph needs 'edges', 'adjacency' or 'vertices'")
        return self


class CycleGraphSpec(BaseModel):
    """Cycle C_n"""

    type: Literal["cycle"] = "cycle"
    n: int = Field(..., ge=3, description="Number of vertices")


class PathGraphSpec(BaseModel):
    """Path P_n on vertices 0..n-1"""

    type: Literal["path"] = "path"
    n: int = Field(..., ge=1, description="Number of vertices")


class CompleteGraphSpec(BaseModel):
    """Complete graph K_n"""

    type: Literal["complete"] = "complete"
    n: int = Field(..., ge=1, description="Number of vertices")


class TreeGraphSpec(BaseModel):
    """Ball of the given radius in the d-regular tree"""

    type: Literal["tree"] = "tree"
    degree: int = Field(..., ge=1, description="Vertex degree of the regular tree")
    radius: int = Field(..., ge=0, le=12, description="Truncation radius around the root")


class LineGraphSpec(BaseModel):
    """Bi-infinite line on the integers (lazy)"""

    type: Literal["line"] = "line"


class CayleyTreeGraphSpec(BaseModel):
    """Cayley graph of the free group with its canonical generators (lazy)"""

    type: Literal["cayley_tree"] = "cayley_tree"
    rank: int = Field(..., ge=1, le=26, description="Rank of the free group")


GraphSpec = Annotated[
    Union[
        FiniteGraphSpec,
        CycleGraphSpec,
        PathGraphSpec,
        CompleteGraphSpec,
        TreeGraphSpec,
        LineGraphSpec,
        CayleyTreeGraphSpec,
    ],
    Field(discriminator="type"),
]


# ============================================================================
# Group specs
# ============================================================================


class CyclicGroupSpec(BaseModel):
    """Finite cyclic group Z/n with generator 1"""

    type: Literal["cyclic"] = "cyclic"
    n: int = Field(..., ge=1, description="Group order")


class IntegerGroupSpec(BaseModel):
    """Infinite cyclic group Z with generator 1"""

    type: Literal["integers"] = "integers"


class FreeGroupSpec(BaseModel):
    """Free group on the letters a, b, c, ..."""

    type: Literal["free"] = "free"
    rank: int = Field(..., ge=1, le=26, description="Number of free generators")


class TableGroupSpec(BaseModel):
    """Finite group given by its multiplication table"""

    type: Literal["table"] = "table"
    mul: List[List[int]] = Field(..., description="mul[i][j] is the index of i*j")
    gens: Optional[List[int]] = Field(
        default=None, description="Generator indices; defaults to every non-identity element"
    )


class PermutationGroupSpec(BaseModel):
    """Permutation group generated by permutations in one-line (array) notation"""

    type: Literal["perm"] = "perm"
    degree: int = Field(..., ge=1, description="Number of permuted points")
    gens: List[List[int]] = Field(..., description="Generators as image arrays")


class DihedralGroupSpec(BaseModel):
    """Dihedral group of order 2n acting on 0..n-1"""

    type: Literal["dihedral"] = "dihedral"
    n: int = Field(..., ge=3, description="Number of polygon vertices")


class SymmetricGroupSpec(BaseModel):
    """Symmetric group S_n generated by adjacent transpositions"""

    type: Literal["symmetric"] = "symmetric"
    n: int = Field(..., ge=1, le=8, description="Number of permuted points")


GroupSpec = Annotated[
    Union[
        CyclicGroupSpec,
        IntegerGroupSpec,
        FreeGroupSpec,
        TableGroupSpec,
        PermutationGroupSpec,
        DihedralGroupSpec,
        SymmetricGroupSpec,
    ],
    Field(discriminator="type"),
]


# ============================================================================
# Actions
# ============================================================================


class ActionSpec(BaseModel):
    """Action of the acting group on the graph"""

    family: Optional[ActionFamily] = Field(
        default=None, description="Built-in action family"
    )
    generator_images: Optional[List[List[int]]] = Field(
        default=None,
        description="Vertex permutation (image array) for each declared generator",
    )
    representatives: Optional[List[int]] = Field(
        default=None, description="Orbit representatives for lazy graphs"
    )
    group: Optional[GroupSpec] = Field(default=None, description="Acting group")
    graph: Optional[GraphSpec] = Field(default=None, description="Graph acted upon")

    @model_validator(mode="after")
    def _one_definition(self) -> "ActionSpec":
        if self.family is not None and self.generator_images is not None:
            raise ValueError("give either 'family' or 'generator_images', not both")
        if self.family is None and self.generator_images is None:
            self.family = ActionFamily.TRIVIAL
        return self


# ============================================================================
# Run configuration
# ============================================================================


class RunConfig(BaseModel):
    """Everything a verification run needs"""

    graph: GraphSpec = Field(..., description="Graph of the graph product")
    vertex_group: GroupSpec = Field(..., description="Vertex group H")
    acting_group: Optional[GroupSpec] = Field(
        default=None, description="Acting group G; defaults to the trivial group"
    )
    action: ActionSpec = Field(default_factory=ActionSpec, description="Action of G on the graph")
    suites: List[SuiteName] = Field(
        default_factory=lambda: list(SuiteName), description="Suites to run"
    )
    samples: int = Field(default=500, ge=1, le=1_000_000, description="Random instances per suite")
    radius: int = Field(default=3, ge=0, le=12, description="Ball radius for sweeps")
    max_syllables: int = Field(default=6, ge=0, le=12, description="Random word length bound")
    constants: List[int] = Field(
        default_factory=lambda: [1, 2, 3, 4, 5, 6],
        description="Constants C used by the sublevel-set claims",
    )
    budget: int = Field(default=200_000, ge=1, description="Search budget for bounded searches")
    seed: int = Field(default=1, ge=0, le=2**64 - 1, description="64-bit RNG seed")
    out: Optional[str] = Field(default=None, description="Report output path")

    @model_validator(mode="after")
    def _cross_validate(self) -> "RunConfig":
        if self.action.group is not None:
            if self.acting_group is not None and self.acting_group != self.action.group:
                raise ValueError("action.group does not match acting_group")
            self.acting_group = self.action.group
        if self.acting_group is None:
            self.acting_group = CyclicGroupSpec(n=1)
        if self.action.graph is not None and self.action.graph != self.graph:
            raise ValueError("action.graph does not match graph")
        if any(c < 1 for c in self.constants):
            raise ValueError("constants must be positive integers")
        return self


# ============================================================================
# Results
# ============================================================================


class Decision(BaseModel):
    """A decision with its witness or certificate"""

    verdict: Verdict = Field(..., description="true / false / inconclusive")
    witness: Any = Field(default=None, description="Witness of failure, or certificate data")
    note: Optional[str] = Field(default=None, description="How the verdict was reached")

    model_config = ConfigDict(frozen=True)

    @property
    def is_true(self) -> bool:
        return self.verdict == Verdict.TRUE

    @property
    def is_false(self) -> bool:
        return self.verdict == Verdict.FALSE

    @property
    def is_inconclusive(self) -> bool:
        return self.verdict == Verdict.INCONCLUSIVE

    @classmethod
    def of(cls, value: bool, witness: Any = None, note: Optional[str] = None) -> "Decision":
        return cls(verdict=Verdict.TRUE if value else Verdict.FALSE, witness=witness, note=note)

    @classmethod
    def unknown(cls, note: str, witness: Any = None) -> "Decision":
        return cls(verdict=Verdict.INCONCLUSIVE, witness=witness, note=note)


class HypothesisReport(BaseModel):
    """Action hypotheses with witnesses"""

    free: Decision = Field(..., description="Every vertex stabilizer is trivial")
    finite_isotropy: Decision = Field(..., description="Every vertex stabilizer is finite")
    orbit_count: Optional[int] = Field(default=None, description="Number of vertex orbits")
    fixes_star_implies_trivial: Decision = Field(
        ..., description="Fixing a star pointwise forces the identity"
    )
    connected: Decision = Field(..., description="Graph connectivity (within budget if lazy)")
    locally_finite: Decision = Field(..., description="Finite neighbor sets")


class SuiteReport(BaseModel):
    """Outcome of one verification suite"""

    suite: SuiteName = Field(..., description="Suite name")
    statement: str = Field(..., description="The identity or inequality being checked")
    total: int = Field(..., ge=0, description="Instances examined")
    passed: int = Field(..., ge=0)
    failed: int = Field(..., ge=0)
    inconclusive: int = Field(..., ge=0)
    counterexample: Optional[str] = Field(default=None, description="First failing instance")
    seed: int = Field(..., description="Seed the suite ran under")
    details: Dict[str, Any] = Field(default_factory=dict, description="Suite-specific data")
    wall_time: float = Field(default=0.0, description="Seconds; the only nondeterministic field")

    @model_validator(mode="after")
    def _tallies(self) -> "SuiteReport":
        if self.passed + self.failed + self.inconclusive != self.total:
            raise ValueError("pass + fail + inconclusive must equal total")
        if (self.counterexample is not None) != (self.failed > 0):
            raise ValueError("counterexample must be present exactly when failures occurred")
        return self

    @property
    def exit_code(self) -> int:
        if self.failed:
            return 1
        if self.inconclusive and not self.passed:
            return 3
        return 0


class MmapRow(BaseModel):
    """One row of m-map output"""

    element: str = Field(..., description="Rendered wreath element")
    f_length: int = Field(..., ge=0, description="l1 norm of the m-map")
    vector: List[Tuple[int, int]] = Field(..., description="Sparse (vertex, value) pairs")


class SweepRecord(BaseModel):
    """One basis column of a commutator sweep"""

    source: str = Field(..., description="Rendered basis element x (or wreath element z)")
    coefficient: str = Field(..., description="Exact rational coefficient")
    target: str = Field(..., description="Rendered image basis element")
    same_vertex: bool = Field(..., description="Symbol vertex equals the (translated) syllable vertex")
    in_star: bool = Field(..., description="supp x and supp of the target lie in the star")
    front_movable: bool = Field(..., description="x or the target has a leading syllable at the vertex")


class PredicateReport(BaseModel):
    """Graph predicates; lazy graphs get ball-restricted certificates"""

    girth: Decision = Field(..., description="Witness is the girth ('inf' for forests) or a lower bound")
    untransvectable: Decision = Field(..., description="No Lk(v) inside St(w) for v != w")
    rigid: Decision = Field(..., description="Lk(Lk v) = {v} for every vertex")

    @property
    def exit_code(self) -> int:
        decisions = (self.untransvectable, self.rigid)
        if any(d.is_false for d in decisions):
            return 1
        if any(d.is_inconclusive for d in decisions):
            return 3
        return 0

    def summary(self) -> str:
        return (
            f"girth={self.girth.witness}, untransvectable={self.untransvectable.verdict.value}, "
            f"rigid={self.rigid.verdict.value}"
        )
