"""
Axioms, provenance and the generation manifest.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from src.core.exceptions import OpenFormula, QianaError
from src.core.utils import sha256_digest
from src.modules.signature.models import AugmentedSignature
from src.modules.syntax.models import Formula
from src.modules.syntax.services import free_vars

# Packs in concatenation order
PACK_USER = "user"
PACK_IST = "ist"
PACK_HELPER = "helper"
PACK_TRUTH = "truth"
PACK_OPTIONAL = "optional"
PACK_TEMPORAL = "temporal"
PACK_MODAL = "modal"

TYPED_PREFIX = "TYPED-"


@dataclass(frozen=True)
class AxiomOptions:
    """Switches for the optional packs and the equality mode."""
    explosion: bool = False
    disambiguation: bool = False
    explicit_equality: bool = False

    def to_dict(self) -> Dict[str, bool]:
        return asdict(self)


@dataclass(frozen=True)
class Provenance:
    """Schema tag plus the parameters the schema was instantiated at."""
    tag: str
    params: Tuple[str, ...] = ()
    line: Optional[int] = None

    def __str__(self) -> str:
        text = self.tag
        if self.params:
            text += f"[{', '.join(self.params)}]"
        if self.line is not None:
            text += f" @line {self.line}"
        return text


@dataclass(frozen=True)
class Axiom:
    name: str
    formula: Formula
    provenance: Provenance

    def __post_init__(self):
        loose = free_vars(self.formula)
        if loose:
            raise OpenFormula(
                f"axiom {self.name} has free variables: {', '.join(sorted(loose))}"
            )


@dataclass(frozen=True)
class Manifest:
    """What was generated, from what, with which options."""
    signature: Dict[str, Any] = field(default_factory=dict)
    options: Dict[str, Any] = field(default_factory=dict)
    packs: Dict[str, int] = field(default_factory=dict)
    counts: Dict[str, int] = field(default_factory=dict)
    resolutions: Tuple[str, ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "signature": self.signature,
            "options": self.options,
            "packs": dict(self.packs),
            "counts": dict(self.counts),
            "resolutions": list(self.resolutions),
        }

    @property
    def digest(self) -> str:
        return sha256_digest(self.to_dict())

    @property
    def total(self) -> int:
        return sum(self.packs.values())


@dataclass(frozen=True)
class AxiomSet:
    """An ordered, name-unique list of axioms together with its manifest."""
    axioms: Tuple[Axiom, ...] = ()
    manifest: Manifest = field(default_factory=Manifest)

    def __post_init__(self):
        object.__setattr__(self, "axioms", tuple(self.axioms))
        seen = set()
        for axiom in self.axioms:
            if axiom.name in seen:
                raise QianaError(f"duplicate axiom name: {axiom.name}")
            seen.add(axiom.name)

    def __len__(self) -> int:
        return len(self.axioms)

    def __iter__(self) -> Iterator[Axiom]:
        return iter(self.axioms)

    def tagged(self, tag: str) -> List[Axiom]:
        return [a for a in self.axioms if a.provenance.tag == tag]

    def count(self, tag: str) -> int:
        return len(self.tagged(tag))

    def named(self, name: str) -> Axiom:
        for axiom in self.axioms:
            if axiom.name == name:
                return axiom
        raise KeyError(name)

    def formulas(self) -> List[Formula]:
        return [a.formula for a in self.axioms]


def tag_counts(axioms: Sequence[Axiom]) -> Dict[str, int]:
    counts: Dict[str, int] = {}
    for axiom in axioms:
        counts[axiom.provenance.tag] = counts.get(axiom.provenance.tag, 0) + 1
    return counts


def signature_snapshot(asig: AugmentedSignature) -> Dict[str, Any]:
    return {
        "functions": [str(s) for s in asig.base_functions],
        "predicates": [str(s) for s in asig.base_predicates],
        "quotable_vars": list(asig.quotable_vars),
    }


def make_set(
    axioms: Sequence[Axiom],
    pack: str,
    asig: Optional[AugmentedSignature] = None,
    options: Optional[AxiomOptions] = None,
    resolutions: Sequence[str] = (),
) -> AxiomSet:
    """Wrap one generated pack with its manifest."""
    manifest = Manifest(
        signature=signature_snapshot(asig) if asig is not None else {},
        options=options.to_dict() if options is not None else {},
        packs={pack: len(axioms)},
        counts=tag_counts(axioms),
        resolutions=tuple(resolutions),
    )
    return AxiomSet(tuple(axioms), manifest)


def concat(*sets: AxiomSet) -> AxiomSet:
    """Concatenate packs in order; the first non-empty signature and options win."""
    axioms: List[Axiom] = []
    packs: Dict[str, int] = {}
    resolutions: List[str] = []
    signature: Dict[str, Any] = {}
    options: Dict[str, Any] = {}
    for part in sets:
        axioms.extend(part.axioms)
        for pack, size in part.manifest.packs.items():
            packs[pack] = packs.get(pack, 0) + size
        resolutions.extend(r for r in part.manifest.resolutions if r not in resolutions)
        signature = signature or part.manifest.signature
        options = options or part.manifest.options
    manifest = Manifest(
        signature=signature,
        options=options,
        packs=packs,
        counts=tag_counts(axioms),
        resolutions=tuple(resolutions),
    )
    return AxiomSet(tuple(axioms), manifest)
