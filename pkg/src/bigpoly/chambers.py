"""Chamber enumeration: equivalence classes of weakly increasing generic
length vectors, each certified by an exact integer witness.

The search runs over complementary subset pairs in a fixed order.  The
status of a pair is forced by closure (supersets and index raising stay
long, duality flips the complement) whenever possible; otherwise both
branches are tried and kept only when an exact rational LP certifies
realizability.  Every leaf is a chamber and carries a witness vector.
"""

from __future__ import annotations

import json
import multiprocessing
import os
from dataclasses import dataclass

from . import backend
from .errors import InvalidFamilyError, InvalidInputError, ResourceLimitError
from .lenvec import LengthVector, LongFamily, long_family

MAX_R = 10
DEFAULT_MIN_TASKS = 64
CHECKPOINT_VERSION = 1
CHECKPOINT_FLUSH_EVERY = 100_000


@dataclass(frozen=True)
class Chamber:
    r: int
    min_long: tuple[int, ...]
    witness: LengthVector
    mu: int

    def fingerprint(self) -> str:
        return ",".join(format(m, "x") for m in self.min_long)

    def family(self) -> LongFamily:
        """The full long family (up-closure of the minimal sets)."""
        return family_from_minimal(self.r, self.min_long)

    def line(self) -> str:
        return f"{self.fingerprint()};{self.witness.csv()};{self.mu}"

    @classmethod
    def from_line(cls, r: int, text: str) -> "Chamber":
        fp, wit, mu_s = text.strip().split(";")
        mins = tuple(int(tok, 16) for tok in fp.split(","))
        lv = LengthVector(tuple(int(tok) for tok in wit.split(",")))
        return cls(r, mins, lv, int(mu_s))


def family_from_minimal(r: int, min_sets, *, raising: bool = True) -> LongFamily:
    """Up-closure of the given sets; raises unless the result is self-dual.

    With ``raising`` the closure runs over supersets and index raising
    (the order realized by weakly increasing vectors, and the one under
    which chamber fingerprints are minimal); without it only supersets
    are added, which admits candidate families whose raising violations
    are then caught by the realizability LP instead.
    """
    size = 1 << r
    full = size - 1
    ups, _ = backend.cover_tables(r)
    status = bytearray(size)
    stack = []
    for m in min_sets:
        if not 0 < m < size:
            raise InvalidInputError(f"subset code {m:#x} out of range for r={r}")
        stack.append(m)
    if not stack:
        raise InvalidFamilyError("empty family")
    while stack:
        m = stack.pop()
        if status[m] == 1:
            continue
        status[m] = 1
        if raising:
            for u in ups[m]:
                if status[u] != 1:
                    stack.append(u)
        else:
            free = full & ~m
            while free:
                b = free & -free
                if status[m | b] != 1:
                    stack.append(m | b)
                free ^= b
    for m in range(size):
        if status[m] == 1:
            if status[full ^ m] == 1:
                raise InvalidFamilyError(
                    f"both {m:#x} and its complement would be long"
                )
        elif status[full ^ m] != 1:
            raise InvalidFamilyError(
                f"neither {m:#x} nor its complement is long"
            )
    for m in range(size):
        if status[m] != 1:
            status[m] = 2
    return LongFamily(r, bytes(status))


def _superset_minimal(status, r):
    out = []
    for m in range(1, 1 << r):
        if status[m] != 1:
            continue
        keep = True
        mm = m
        while mm:
            b = mm & -mm
            if status[m ^ b] == 1:
                keep = False
                break
            mm ^= b
        if keep:
            out.append(m)
    return out


def realizable(r: int, min_sets, *, raising: bool = True) -> LengthVector | None:
    """Witness vector for a candidate family, or None when infeasible.

    The family is given by (not necessarily minimal) generating long
    sets and must closure to a self-dual monotone family.  Feasibility
    of the defining strict system {l(J) > l(Jc) for long J, 0 <= l_1 <=
    ... <= l_r} is decided by exact rational LP; no tolerances.
    """
    fam = family_from_minimal(r, min_sets, raising=raising)
    if raising:
        constraints = list(fam.minimal_sets())
    else:
        constraints = _superset_minimal(fam.status, r)
    witness = backend.lp_realize(r, constraints)
    if witness is None:
        return None
    lv = LengthVector(witness)
    assert long_family(lv) == fam
    return lv


def _check_r(r: int, allow_large: bool) -> None:
    if not isinstance(r, int) or r < 1:
        raise InvalidInputError("r must be a positive integer")
    if r > MAX_R and not allow_large:
        raise ResourceLimitError(
            f"enumeration for r={r} > {MAX_R} must be explicitly forced"
        )


def _tasks_for(r: int, min_tasks: int):
    # The task split is fixed by (r, min_tasks) alone, never by the
    # worker count, so output is identical for any pool size.
    if min_tasks <= 1 or r <= 2:
        return [((), backend.root_witness(r))]
    return backend.expand_frontier(r, min_tasks)


def _run_task(args):
    idx, r, prefix, witness, mode = args
    return idx, backend.enumerate_subtree(r, prefix, witness, mode)


def _iter_task_results(r, tasks, workers, mode, skip=None):
    """Yield (idx, result) in task order, farming out to a process pool."""
    todo = [
        (i, r, pfx, wit, mode)
        for i, (pfx, wit) in enumerate(tasks)
        if not (skip and i in skip)
    ]
    if workers <= 1 or len(todo) <= 1:
        for args in todo:
            yield _run_task(args)[:2]
        return
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=min(workers, len(todo))) as pool:
        pending = {}
        want = 0
        order = [args[0] for args in todo]
        for idx, payload in pool.imap_unordered(_run_task, todo, chunksize=1):
            pending[idx] = payload
            while want < len(order) and order[want] in pending:
                i = order[want]
                yield i, pending.pop(i)
                want += 1
        while want < len(order):
            i = order[want]
            yield i, pending.pop(i)
            want += 1


def enumerate_chambers(
    r: int,
    *,
    workers: int = 1,
    allow_large: bool = False,
    min_tasks: int = DEFAULT_MIN_TASKS,
) -> list[Chamber]:
    """All chambers for rank r, sorted by their minimal long sets."""
    _check_r(r, allow_large)
    tasks = _tasks_for(r, min_tasks)
    out = []
    for _, records in _iter_task_results(r, tasks, workers, "full"):
        for mins, wit, m in records:
            out.append(Chamber(r, mins, LengthVector(wit), m))
    out.sort(key=lambda c: c.min_long)
    return out


def chamber_histogram(
    r: int,
    *,
    workers: int = 1,
    allow_large: bool = False,
    min_tasks: int = DEFAULT_MIN_TASKS,
    checkpoint: "Checkpoint | None" = None,
) -> dict[int, int]:
    """mu -> chamber count without materializing the chambers."""
    _check_r(r, allow_large)
    tasks = _tasks_for(r, min_tasks)
    hist: dict[int, int] = {}
    skip = None
    if checkpoint is not None:
        skip = checkpoint.prepare(r, "count", len(tasks))
        for done_hist in checkpoint.completed_histograms():
            for k, v in done_hist.items():
                hist[k] = hist.get(k, 0) + v
    for idx, task_hist in _iter_task_results(r, tasks, workers, "count", skip):
        for k, v in task_hist.items():
            hist[k] = hist.get(k, 0) + v
        if checkpoint is not None:
            checkpoint.task_done(idx, task_hist, None)
    return dict(sorted(hist.items()))


def chamber_count_report(r: int, chambers: list[Chamber] | None = None, **kw) -> dict[int, int]:
    """Histogram mu -> number of chambers (from a list when supplied)."""
    if chambers is None:
        return chamber_histogram(r, **kw)
    hist: dict[int, int] = {}
    for c in chambers:
        hist[c.mu] = hist.get(c.mu, 0) + 1
    return dict(sorted(hist.items()))


def write_chambers(
    r: int,
    out,
    *,
    workers: int = 1,
    allow_large: bool = False,
    min_tasks: int = DEFAULT_MIN_TASKS,
    checkpoint: "Checkpoint | None" = None,
    sort: bool | None = None,
) -> dict[int, int]:
    """Stream chamber lines to a file object; returns the mu histogram.

    For r <= 9 (or sort=True) the lines are sorted by fingerprint; for
    larger runs they stream in deterministic task-major DFS order.
    """
    _check_r(r, allow_large)
    if sort is None:
        sort = r <= 9
    tasks = _tasks_for(r, min_tasks)
    skip = None
    hist: dict[int, int] = {}
    if checkpoint is not None:
        skip = checkpoint.prepare(r, "full", len(tasks))
        for done_hist in checkpoint.completed_histograms():
            for k, v in done_hist.items():
                hist[k] = hist.get(k, 0) + v
    collected = [] if sort else None
    for idx, records in _iter_task_results(r, tasks, workers, "full", skip):
        task_hist: dict[int, int] = {}
        lines = []
        for mins, wit, m in records:
            task_hist[m] = task_hist.get(m, 0) + 1
            lv = LengthVector(wit)
            lines.append(f"{','.join(format(x, 'x') for x in mins)};{lv.csv()};{m}")
        for k, v in task_hist.items():
            hist[k] = hist.get(k, 0) + v
        if checkpoint is not None:
            checkpoint.task_done(idx, task_hist, lines)
        if sort:
            for mins, wit, m in records:
                collected.append((mins, wit, m))
        else:
            for ln in lines:
                out.write(ln + "\n")
    if checkpoint is not None and not sort:
        # lines of previously completed tasks were already on disk; the
        # caller reassembles full output via checkpoint.emit_lines()
        pass
    if sort:
        if checkpoint is not None:
            for mins_s, wit_s, m in checkpoint.completed_records():
                collected.append((mins_s, wit_s, m))
        collected.sort(key=lambda rec: rec[0])
        for mins, wit, m in collected:
            lv = LengthVector(tuple(wit))
            out.write(f"{','.join(format(x, 'x') for x in mins)};{lv.csv()};{m}\n")
    return dict(sorted(hist.items()))


class Checkpoint:
    """Append-only progress log for long enumerations.

    Layout: a header line with r/version/mode/task count, then per task
    a begin marker, the task's chamber lines (full mode only), and a
    done marker carrying the task's mu histogram.  Resuming re-reads
    completed tasks and re-runs only the rest.
    """

    def __init__(self, path: str, resume: bool = False):
        self.path = path
        self.resume = resume
        self._fh = None
        self._done: dict[int, dict[int, int]] = {}
        self._resumed: set[int] = set()
        self._since_flush = 0

    def prepare(self, r: int, mode: str, ntasks: int) -> set[int]:
        header = f"#bigpoly-chambers r={r} v={CHECKPOINT_VERSION} mode={mode} tasks={ntasks}"
        if self.resume and os.path.exists(self.path):
            with open(self.path, "r", encoding="utf-8") as fh:
                first = fh.readline().rstrip("\n")
                if first != header:
                    raise InvalidInputError(
                        f"checkpoint header mismatch: {first!r} vs {header!r}"
                    )
                for line in fh:
                    if line.startswith("#task") and " done " in line:
                        toks = line.split()
                        idx = int(toks[1])
                        hist_tok = toks[3].split("=", 1)[1]
                        self._done[idx] = _decode_hist(hist_tok)
            self._fh = open(self.path, "a", encoding="utf-8")
            self._resumed = set(self._done)
        else:
            self._fh = open(self.path, "w", encoding="utf-8")
            self._fh.write(header + "\n")
            self._fh.flush()
        return set(self._resumed)

    def completed_histograms(self):
        return [self._done[i] for i in self._resumed]

    def completed_records(self):
        """(min_long, witness, mu) tuples of tasks finished before resume."""
        out = []
        if not self._resumed:
            return out
        with open(self.path, "r", encoding="utf-8") as fh:
            fh.readline()
            current = None
            seen = set()
            for line in fh:
                if line.startswith("#task"):
                    toks = line.split()
                    idx = int(toks[1])
                    if toks[2] == "begin":
                        current = idx if idx in self._resumed and idx not in seen else None
                        if current is not None:
                            seen.add(current)
                            buf = []
                    elif toks[2] == "done" and current == idx:
                        out.extend(buf)
                        current = None
                elif current is not None:
                    fp, wit, mu_s = line.strip().split(";")
                    buf.append(
                        (
                            tuple(int(t, 16) for t in fp.split(",")),
                            tuple(int(t) for t in wit.split(",")),
                            int(mu_s),
                        )
                    )
        return out

    def task_done(self, idx: int, hist: dict[int, int], lines: list[str] | None):
        self._fh.write(f"#task {idx} begin\n")
        if lines:
            self._fh.write("\n".join(lines) + "\n")
            self._since_flush += len(lines)
        self._fh.write(f"#task {idx} done hist={_encode_hist(hist)}\n")
        self._done[idx] = dict(hist)
        self._since_flush += 1
        if self._since_flush >= CHECKPOINT_FLUSH_EVERY:
            self._fh.flush()
            os.fsync(self._fh.fileno())
            self._since_flush = 0
        else:
            self._fh.flush()

    def close(self):
        if self._fh is not None:
            self._fh.close()
            self._fh = None


def _encode_hist(hist: dict[int, int]) -> str:
    return json.dumps({str(k): v for k, v in sorted(hist.items())}, separators=(",", ":"))


def _decode_hist(text: str) -> dict[int, int]:
    return {int(k): v for k, v in json.loads(text).items()}
