"""Explicit exponential-growth certificates for product replacement graphs.

A certificate packages, for a level m and a base generating n-tuple S:
a witness word g in the rigid stabilizer of 1^m, a spanning walk of the
level-m Schreier graph, and an explicit Nielsen path in the (n+1)-tuple
graph that starts at S padded with one identity and drags the spare slot
through every conjugate h_i g h_i^(-1) in walk order. Checkpoints mark
the move counts after which the spare slot must equal each conjugate.

Verification replays the path move by move and re-derives every claim:
walk validity, rigid-stabilizer membership, cubicity of the conjugate
family (brute force for small k, disjoint supports otherwise), checkpoint
equalities, and the path length bound (alpha + 4) * 2^m. A verified
certificate pins 2^k distinct tuples inside the ball of radius
path_length + k around the padded base tuple, with no ball enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .backends import TreeBackend
from .cubes import BRUTE_FORCE_CAP, check_cubic_bruteforce, check_cubic_by_support
from .omega import OmegaSequence
from .prp import NielsenMove, apply_move
from .schreier import Label, schreier, spanning_walk
from .witnesses import witness_for
from .words import TreeWord, identity, word

FORMAT_HEADER = "prplab-certificate v1"


class CertificateError(ValueError):
    pass


@dataclass
class CubicCertificate:
    omega: OmegaSequence
    level: int
    base: tuple[str, ...]  # generator words of S, reduced letters
    witness: str  # letters of g (offset 0)
    start: str
    visits: list[str]
    step_labels: list[list[Label]]
    moves: list[NielsenMove]
    checkpoints: list[int]  # after moves[:c] the spare slot equals the next conjugate
    alpha: int
    k: int

    @property
    def path_length(self) -> int:
        return len(self.moves)


@dataclass
class VerificationResult:
    ok: bool
    failures: list[str] = field(default_factory=list)
    path_length: int = 0
    bound: int = 0
    k: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _spell_moves(letters: str, base: tuple[str, ...], slot: int) -> list[NielsenMove]:
    """One right-multiplication per letter, pulling letters from the base.

    A letter missing from the base may be spelled as a product of present
    ones (d = bc); anything else is rejected.
    """
    pos = {w: i + 1 for i, w in enumerate(base) if len(w) == 1}
    out = []
    for ch in letters:
        if ch in pos:
            out.append(NielsenMove("R", 1, pos[ch], slot))
        elif ch == "d" and "b" in pos and "c" in pos:
            out.append(NielsenMove("R", 1, pos["b"], slot))
            out.append(NielsenMove("R", 1, pos["c"], slot))
        else:
            raise CertificateError(
                f"base tuple {base} cannot spell letter {ch!r} into the spare slot"
            )
    return out


def _conjugation_moves(label_word: list[Label], slot: int) -> list[NielsenMove]:
    """Two moves per label: slot <- g * slot * g^-1."""
    out = []
    for gi, sign in label_word:
        out.append(NielsenMove("L", sign, gi, slot))
        out.append(NielsenMove("R", -sign, gi, slot))
    return out


def build_certificate(
    omega: OmegaSequence,
    m: int,
    base: tuple[str, ...] = ("a", "b", "c", "d"),
    max_level: int = 14,
) -> CubicCertificate:
    """Construct the certificate for level m over the given sequence.

    Raises NoWitnessError for eventually constant sequences and
    CertificateError when the Schreier graph is disconnected or the base
    cannot spell the witness.
    """
    gens = tuple(word(omega, w) for w in base)
    _, g = witness_for(omega, m)  # may raise NoWitnessError
    graph = schreier(gens, m, max_level=max_level)
    if not graph.connected:
        raise CertificateError(f"level-{m} Schreier graph is disconnected")
    start = "1" * m
    walk = spanning_walk(graph, start)

    slot = len(base) + 1
    moves: list[NielsenMove] = []
    checkpoints: list[int] = []
    moves.extend(_spell_moves(g.letters, tuple(w.letters for w in gens), slot))
    checkpoints.append(len(moves))
    for labels in walk.step_labels:
        moves.extend(_conjugation_moves(labels, slot))
        checkpoints.append(len(moves))

    k = 2 ** m
    spell_count = checkpoints[0]
    alpha = max(1, -(-spell_count // k))  # ceil; recorded, not assumed
    return CubicCertificate(
        omega=omega,
        level=m,
        base=tuple(w.letters for w in gens),
        witness=g.letters,
        start=start,
        visits=list(walk.visits),
        step_labels=[list(ls) for ls in walk.step_labels],
        moves=moves,
        checkpoints=checkpoints,
        alpha=alpha,
        k=k,
    )


def verify_certificate(
    cert: CubicCertificate, max_level: int = 14, brute_cap: int = BRUTE_FORCE_CAP
) -> VerificationResult:
    """Independent replay of every claim a certificate makes.

    Cubicity is settled by brute-force product enumeration for
    k <= brute_cap and by the disjoint-support criterion above it.
    """
    failures: list[str] = []
    omega = cert.omega
    m = cert.level
    bound = (cert.alpha + 4) * (2 ** m)
    result = VerificationResult(
        ok=False, failures=failures, path_length=cert.path_length, bound=bound, k=cert.k
    )
    if m > max_level:
        failures.append(f"level {m} above configured maximum {max_level}")
        return result

    try:
        gens = tuple(word(omega, w) for w in cert.base)
        g = word(omega, cert.witness)
    except Exception as exc:  # malformed words
        failures.append(f"malformed certificate words: {exc}")
        return result

    if cert.k != 2 ** m:
        failures.append(f"k={cert.k} does not match 2^{m}")
    if len(cert.visits) != 2 ** m or len(set(cert.visits)) != 2 ** m:
        failures.append("visits do not enumerate the level exactly once")
    if any(len(s) != m or set(s) - {"0", "1"} for s in cert.visits):
        failures.append("visits contain malformed strings")
    if cert.visits and cert.visits[0] != cert.start:
        failures.append("walk does not begin at its start string")
    if len(cert.step_labels) != max(0, len(cert.visits) - 1):
        failures.append("step list length does not match visit count")
    total_steps = sum(len(ls) for ls in cert.step_labels)
    if total_steps > 2 * (2 ** m) - 2 and m > 0:
        failures.append(f"walk uses {total_steps} steps, above 2*2^{m} - 2")

    if g.is_identity():
        failures.append("witness is trivial")
    if not g.in_rist(cert.start):
        failures.append(f"witness is not in the rigid stabilizer of {cert.start!r}")
    if failures:
        return result

    # Recompute walk elements and conjugates from the recorded labels.
    def label_word(labels: list[Label]) -> TreeWord:
        w = identity(omega)
        for gi, sign in labels:
            if not 1 <= gi <= len(gens):
                raise CertificateError(f"step label references generator {gi}")
            step = gens[gi - 1]
            w = (step if sign > 0 else step.inverse()) * w
        return w

    try:
        h_words = [identity(omega)]
        for labels in cert.step_labels:
            h_words.append(label_word(labels) * h_words[-1])
    except CertificateError as exc:
        failures.append(str(exc))
        return result

    for h, s in zip(h_words, cert.visits):
        if h.act(cert.start) != s:
            failures.append(f"walk element does not carry {cert.start!r} to {s!r}")
            return result

    conjugates = [g.conjugate_by(h) for h in h_words]
    support = check_cubic_by_support(conjugates, m)
    for idx, s in enumerate(cert.visits):
        if support.supports[idx] != {s}:
            failures.append(f"conjugate {idx} is not supported exactly at {s!r}")
    if not support.ok:
        failures.extend(support.problems)

    if cert.k <= min(brute_cap, BRUTE_FORCE_CAP):
        cubic = check_cubic_bruteforce(conjugates, fingerprint_level=max(7, m + 4))
    else:
        cubic = bool(support)
    if not cubic:
        failures.append("conjugate family is not cubic")

    # Replay the Nielsen path and compare the spare slot at checkpoints.
    if len(cert.checkpoints) != len(conjugates):
        failures.append("checkpoint count does not match conjugate count")
        return result
    if any(c < 0 or c > len(cert.moves) for c in cert.checkpoints) or sorted(
        cert.checkpoints
    ) != list(cert.checkpoints):
        failures.append("checkpoints are not increasing move counts")
        return result

    backend = TreeBackend(omega)
    entries = tuple(gens) + (identity(omega),)
    slot = len(entries)
    applied = 0
    cp_idx = 0

    def take_checkpoints() -> None:
        nonlocal cp_idx
        while cp_idx < len(cert.checkpoints) and cert.checkpoints[cp_idx] == applied:
            if not entries[slot - 1].equals(conjugates[cp_idx]):
                failures.append(f"checkpoint {cp_idx} mismatch after {applied} moves")
            cp_idx += 1

    take_checkpoints()
    for move in cert.moves:
        try:
            entries = apply_move(backend, entries, move)
        except Exception as exc:
            failures.append(f"move {move} failed: {exc}")
            return result
        applied += 1
        take_checkpoints()
    if cp_idx != len(cert.checkpoints):
        failures.append("unused checkpoints past the end of the move list")

    if cert.path_length > bound:
        failures.append(f"path length {cert.path_length} exceeds ({cert.alpha}+4)*2^{m} = {bound}")

    result.ok = not failures
    return result


# -- serialization ----------------------------------------------------------


def _mark(s: str) -> str:
    # The level-0 vertex is the empty string; "-" stands in for it.
    return s if s else "-"


def _unmark(s: str) -> str:
    return "" if s == "-" else s


def serialize_certificate(cert: CubicCertificate) -> str:
    lines = [FORMAT_HEADER]
    lines.append(f"omega-prefix: {cert.omega.prefix}")
    lines.append(f"omega-cycle: {cert.omega.cycle}")
    lines.append(f"level: {cert.level}")
    lines.append(f"alpha: {cert.alpha}")
    lines.append(f"k: {cert.k}")
    lines.append("base: " + " ".join(cert.base))
    lines.append(f"witness: {cert.witness}")
    lines.append(f"start: {_mark(cert.start)}")
    lines.append("visits: " + " ".join(_mark(v) for v in cert.visits))
    for labels in cert.step_labels:
        lines.append("step: " + " ".join(f"{gi}{'+' if s > 0 else '-'}" for gi, s in labels))
    lines.append("moves: " + " ".join(str(m) for m in cert.moves))
    lines.append("checkpoints: " + " ".join(str(c) for c in cert.checkpoints))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> CubicCertificate:
    lines = [ln.rstrip("\n") for ln in text.strip().splitlines()]
    if not lines or lines[0].strip() != FORMAT_HEADER:
        raise CertificateError(f"missing or unknown header; expected {FORMAT_HEADER!r}")
    fields: dict[str, str] = {}
    steps: list[list[Label]] = []
    for ln in lines[1:]:
        if not ln.strip():
            continue
        key, _, value = ln.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "step":
            labels: list[Label] = []
            for item in value.split():
                if item[-1] not in "+-":
                    raise CertificateError(f"malformed step label {item!r}")
                labels.append((int(item[:-1]), 1 if item[-1] == "+" else -1))
            steps.append(labels)
        else:
            fields[key] = value
    try:
        omega = OmegaSequence(fields.get("omega-prefix", ""), fields["omega-cycle"])
        level = int(fields["level"])
        cert = CubicCertificate(
            omega=omega,
            level=level,
            base=tuple(fields["base"].split()),
            witness=fields.get("witness", ""),
            start=_unmark(fields.get("start", "-")),
            visits=[_unmark(v) for v in fields["visits"].split()] if fields.get("visits") else [],
            step_labels=steps,
            moves=[NielsenMove.parse(t) for t in fields.get("moves", "").split()],
            checkpoints=[int(t) for t in fields.get("checkpoints", "").split()],
            alpha=int(fields["alpha"]),
            k=int(fields["k"]),
        )
    except KeyError as exc:
        raise CertificateError(f"missing certificate field {exc.args[0]!r}") from None
    except ValueError as exc:
        raise CertificateError(f"malformed certificate field: {exc}") from None
    return cert
