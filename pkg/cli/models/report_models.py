from typing import List, Optional

from pydantic import BaseModel, Field

from core.complexes.chain_complex import ChainComplex
from core.modules.fp_module import CanonicalForm


class CanonicalFormModel(BaseModel):
    text: str = Field(..., description="Invariant-factor rendering, e.g. 'Z/2 ⊕ Z/4'")
    factors: List[int] = Field(..., description="Torsion invariant factors d1 | d2 | ...")
    free_rank: int = Field(..., description="Number of free summands")

    @classmethod
    def of(cls, form: CanonicalForm) -> "CanonicalFormModel":
        return cls(text=str(form), factors=list(form.factors), free_rank=form.free_rank)


class DegreeTermModel(BaseModel):
    degree: int = Field(..., description="Homological degree")
    form: CanonicalFormModel = Field(..., description="Canonical form of the term in this degree")


class ComplexModel(BaseModel):
    lo: int = Field(..., description="Lowest degree of the window")
    hi: int = Field(..., description="Highest degree of the window")
    terms: List[DegreeTermModel] = Field(..., description="Terms from the top degree downward")
    literal: str = Field(..., description="Literal that re-parses to this complex")

    @classmethod
    def of(cls, x: ChainComplex) -> "ComplexModel":
        terms = [
            DegreeTermModel(degree=n, form=CanonicalFormModel.of(x.term(n).canonical))
            for n in range(x.hi, x.lo - 1, -1)
        ]
        return cls(lo=x.lo, hi=x.hi, terms=terms, literal=x.literal())


class GorensteinModel(BaseModel):
    gpd: Optional[str] = Field(None, description="Gorenstein projective dimension; null if not computable")
    gid: Optional[str] = Field(None, description="Gorenstein injective dimension; null if not computable")
    gfd: Optional[str] = Field(None, description="Gorenstein flat dimension; null if not computable")
    pd: str = Field(..., description="Projective dimension, '∞' when infinite")
    w_member: bool = Field(..., description="Whether the object lies in W (finite pd)")
    justification: List[str] = Field(..., description="Rules the values were decided by")
    rules: List[str] = Field(default_factory=list, description="Statement of each justification rule")


class OracleLineModel(BaseModel):
    quantity: str = Field(..., description="What was cross-checked")
    performed: bool = Field(..., description="False when the input exceeded the oracle's bounds")
    agrees: Optional[bool] = Field(None, description="Oracle verdict; null when not performed")
    detail: str = Field(..., description="Oracle value or the reason it was skipped")


class CommandReport(BaseModel):
    command: str = Field(..., description="Subcommand that produced the report")
    ring: str = Field(..., description="Base ring, 'Z' or 'Z/m'")
    arguments: List[str] = Field(default_factory=list, description="Literal or scalar arguments")
    lines: List[str] = Field(..., description="Deterministic text rendering, first line is the result")
    module: Optional[CanonicalFormModel] = Field(None, description="Module-valued result")
    complex: Optional[ComplexModel] = Field(None, description="Complex-valued result")
    gorenstein: Optional[GorensteinModel] = Field(None, description="Dimension report")
    verdict: Optional[bool] = Field(None, description="Boolean answer of a decision command")
    verified: Optional[bool] = Field(None, description="Outcome of re-verifying a constructed witness")
    oracle: List[OracleLineModel] = Field(default_factory=list, description="Oracle cross-checks")

    @property
    def failed(self) -> bool:
        """A mathematical check failed: a witness did not re-verify or the oracle disagreed."""
        return self.verified is False or any(o.agrees is False for o in self.oracle)


class CheckResultModel(BaseModel):
    name: str = Field(..., description="Registered check name")
    description: str = Field(..., description="What the check asserts")
    passed: bool = Field(..., description="Whether every instance held")
    detail: str = Field(..., description="Instance count or the first failing instance")
    cases: int = Field(..., description="Instances examined")


class ExpectationModel(BaseModel):
    line: int = Field(..., description="Line of the expect statement in the suite file")
    command: str = Field(..., description="Command with its object names")
    expected: str = Field(..., description="Expected first output line")
    actual: str = Field(..., description="Produced first output line or the raised error")
    passed: bool = Field(..., description="Whether actual equals expected")


class SuiteReport(BaseModel):
    suite: str = Field(..., description="'paper-suite' or the suite file path")
    seed: int = Field(..., description="Seed used by randomized checks")
    passed: bool = Field(..., description="True when every check and expectation passed")
    checks: List[CheckResultModel] = Field(default_factory=list, description="Registered check results")
    expectations: List[ExpectationModel] = Field(
        default_factory=list, description="Suite file expectations"
    )
