"""Index ledger for pipe surfaces.

A surface splits into a compact bag B and n pipes. Filling each pipe
mouth with a disc gives a compact surface F carrying one artificial
singularity p_i per mouth, and shrinking the contour shows
i(p_i) = 2 - i(q_i) against the matching singularity q_i inside the pipe,
with i(q_i) <= 1. Feasibility of the resulting arithmetic in chi(B) and n
is a necessary condition for a foliation; it is never sufficient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapBoundViolation, LengthMismatch, RangeError
from .halfint import HalfIndex

NECESSITY_NOTE = (
    "a feasible ledger is necessary, not sufficient; surfaces with a "
    "feasible ledger may still carry no foliation")


def bagpipe_euler(chi_bag: int, pipes: int) -> tuple[int, int]:
    """(chi of the surface, chi of the capped-off compact part).

    Pipes are half-open cylinders, characteristic zero, so the surface
    keeps chi(B); capping the n mouths with discs adds n.
    """
    if pipes < 0:
        raise RangeError("pipe count must be nonnegative", pipes=pipes)
    return chi_bag, chi_bag + pipes


@dataclass(frozen=True)
class BagpipeSpec:
    chi_bag: int
    pipes: int
    cap_indices: tuple[HalfIndex, ...] | None = None

    def __post_init__(self):
        if self.pipes < 0:
            raise RangeError("pipe count must be nonnegative",
                             pipes=self.pipes)
        if self.cap_indices is None:
            return
        caps = tuple(self.cap_indices)
        object.__setattr__(self, "cap_indices", caps)
        if len(caps) != self.pipes:
            raise LengthMismatch(
                "one cap index per pipe", pipes=self.pipes, got=len(caps))
        for q in caps:
            if q > 1:
                raise CapBoundViolation(
                    "cap indices cannot exceed 1", value=str(q))


@dataclass(frozen=True)
class Verdict:
    feasible: bool
    chi_m: int
    chi_f: int
    required_cap_sum: HalfIndex
    witness: tuple[HalfIndex, ...] | None
    chain: tuple[str, ...]
    note: str = NECESSITY_NOTE


def _signed(n: int) -> str:
    return str(n) if n >= 0 else f"({n})"


def witness_poles(caps: tuple[HalfIndex, ...]) -> tuple[HalfIndex, ...]:
    """Indices of the artificial cap singularities, i(p) = 2 - i(q)."""
    return tuple(HalfIndex(4 - q.doubled) for q in caps)


def foliation_feasibility(spec: BagpipeSpec) -> Verdict:
    """Decide whether cap indices satisfying the ledger exist.

    Eliminating i(p_i) = 2 - i(q_i) from sum i(p_i) = chi(F) leaves
    sum i(q_i) = n - chi(M) with every i(q_i) <= 1, hence at most n on the
    left. With no pipes the surface must have chi = 0; with pipes any
    chi(M) >= 0 works and the slack can be dumped into a single cap.
    """
    chi_m, chi_f = bagpipe_euler(spec.chi_bag, spec.pipes)
    n = spec.pipes
    required = HalfIndex.from_int(n - chi_m)

    chain = [
        f"(1) chi(M) = chi(B) = {chi_m}",
        f"(2) chi(F) = chi(B) + n = {spec.chi_bag} + {n} = {chi_f}",
        f"(3) sum i(p_i) = chi(F) = {chi_f}",
        "(4) i(p_i) = 2 - i(q_i)",
        "(5) i(q_i) <= 1",
        f"(6) sum i(q_i) = n - chi(M) = {n} - {_signed(chi_m)} = {required}, "
        f"and (5) caps the sum at n = {n}",
    ]

    if spec.cap_indices is not None:
        total = HalfIndex(sum(q.doubled for q in spec.cap_indices))
        ok = total == required
        chain.append(
            f"given caps sum to {total}; "
            + ("ledger balances" if ok else f"ledger needs {required}"))
        return Verdict(
            feasible=ok, chi_m=chi_m, chi_f=chi_f, required_cap_sum=required,
            witness=spec.cap_indices if ok else None, chain=tuple(chain))

    if n == 0:
        ok = chi_m == 0
        chain.append(
            "no pipes: feasible exactly when chi(M) = 0"
            + (", which holds" if ok else f", but chi(M) = {chi_m}"))
        witness = () if ok else None
        return Verdict(
            feasible=ok, chi_m=chi_m, chi_f=chi_f, required_cap_sum=required,
            witness=witness, chain=tuple(chain))

    if chi_m < 0:
        chain.append(
            f"required sum {required} exceeds the cap total {n}: "
            f"chi(M) = {chi_m} < 0 is obstructed")
        return Verdict(
            feasible=False, chi_m=chi_m, chi_f=chi_f,
            required_cap_sum=required, witness=None, chain=tuple(chain))

    witness = tuple([HalfIndex.from_int(1)] * (n - 1)
                    + [HalfIndex.from_int(1 - chi_m)])
    chain.append(
        "witness caps: " + ", ".join(str(q) for q in witness)
        + "; poles: " + ", ".join(str(p) for p in witness_poles(witness)))
    return Verdict(
        feasible=True, chi_m=chi_m, chi_f=chi_f, required_cap_sum=required,
        witness=witness, chain=tuple(chain))
