"""Attendance event-log ingestion: CSV parsing, cleaning, aggregation.

Raw event logs are noisy: duplicated scans, contradictory rows for the
same student-week, malformed fields. Everything dropped or rewritten is
counted in a :class:`CleaningReport`; nothing disappears silently.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .credibility import ModuleTermRecord, WeekObservation, strength_bin
from .credibility import sac as sac_score
from .errors import MissingHeader, WeekOutOfRange

EVENTS_HEADER = ("student_id", "module_code", "semester", "week", "status")
ROSTER_HEADER = ("module_code", "semester", "registered")
MODULE_INPUT_HEADER = ("module_code", "semester", "weeks_total", "attendance_taken", "attend_avg")
AGGREGATE_HEADER = (
    "module_code",
    "semester",
    "weeks_total",
    "attendance_taken",
    "attend_avg",
    "sac",
    "sac_strength",
)


@dataclass(frozen=True)
class AttendanceEvent:
    """One student-module-week attendance record."""

    student_id: str
    module_code: str
    semester: int
    week_index: int
    present: bool

    @property
    def key(self) -> tuple[str, str, int, int]:
        return (self.student_id, self.module_code, self.semester, self.week_index)

    @property
    def status(self) -> str:
        return "present" if self.present else "absent"


@dataclass(frozen=True)
class RosterEntry:
    """Registered head count for a module-semester."""

    module_code: str
    semester: int
    registered: int

    def __post_init__(self) -> None:
        if self.registered < 1:
            raise ValueError(f"{self.module_code}: registered must be >= 1")


@dataclass
class CleaningReport:
    """Row accounting for one pipeline stage.

    Invariant: rows_read == rows_kept + duplicates_dropped + rows_rejected.
    A conflicting duplicate (same key, contradictory status) counts toward
    duplicates_dropped too; conflicts_resolved tallies how many keys
    needed the present-beats-absent rule.
    """

    rows_read: int = 0
    rows_kept: int = 0
    duplicates_dropped: int = 0
    conflicts_resolved: int = 0
    rejection_reasons: dict[str, int] = field(default_factory=dict)

    @property
    def rows_rejected(self) -> int:
        return sum(self.rejection_reasons.values())

    def reject(self, reason: str) -> None:
        self.rejection_reasons[reason] = self.rejection_reasons.get(reason, 0) + 1

    def check(self) -> None:
        if self.rows_read != self.rows_kept + self.duplicates_dropped + self.rows_rejected:
            raise AssertionError(f"cleaning report does not balance: {self}")


def _as_text_lines(stream) -> io.TextIOBase:
    if isinstance(stream, bytes):
        return io.StringIO(stream.decode("utf-8"))
    if isinstance(stream, str):
        return io.StringIO(stream)
    data = stream.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    return io.StringIO(data)


def parse_events(stream) -> tuple[list[AttendanceEvent], CleaningReport]:
    """Parse an events CSV into well-formed events.

    The header must be exactly ``student_id,module_code,semester,week,status``.
    Malformed rows (wrong arity, bad semester, week < 1, unknown status,
    empty identifiers) are rejected with a counted reason. Status matching
    is case-insensitive and whitespace around fields is trimmed.
    """
    reader = csv.reader(_as_text_lines(stream))
    try:
        header = next(reader)
    except StopIteration:
        raise MissingHeader("events CSV is empty") from None
    if tuple(cell.strip() for cell in header) != EVENTS_HEADER:
        raise MissingHeader(
            f"expected header {','.join(EVENTS_HEADER)}, got {','.join(header)}"
        )

    events: list[AttendanceEvent] = []
    report = CleaningReport()
    for row in reader:
        if not row:
            continue
        report.rows_read += 1
        if len(row) != len(EVENTS_HEADER):
            report.reject("wrong field count")
            continue
        student_id, module_code, semester_s, week_s, status_s = (c.strip() for c in row)
        if not student_id:
            report.reject("empty student_id")
            continue
        if not module_code:
            report.reject("empty module_code")
            continue
        if semester_s not in ("1", "2"):
            report.reject("bad semester")
            continue
        try:
            week = int(week_s)
        except ValueError:
            report.reject("bad week")
            continue
        if week < 1:
            report.reject("bad week")
            continue
        status = status_s.lower()
        if status not in ("present", "absent"):
            report.reject("unknown status")
            continue
        events.append(
            AttendanceEvent(student_id, module_code, int(semester_s), week, status == "present")
        )
    report.rows_kept = len(events)
    report.check()
    return events, report


def clean_events(events: list[AttendanceEvent]) -> tuple[list[AttendanceEvent], CleaningReport]:
    """Deduplicate events down to one per (student, module, semester, week).

    When the same key carries both a present and an absent row, present
    wins: double scans are far more common than phantom ones. Output is
    sorted by module, semester, week, student, so the result is a pure
    function of the input set.
    """
    groups: dict[tuple, list[AttendanceEvent]] = {}
    for event in events:
        groups.setdefault(event.key, []).append(event)

    report = CleaningReport(rows_read=len(events))
    kept: list[AttendanceEvent] = []
    for key, group in groups.items():
        statuses = {e.present for e in group}
        winner = group[0] if len(statuses) == 1 else next(e for e in group if e.present)
        kept.append(winner)
        report.duplicates_dropped += len(group) - 1
        if len(statuses) > 1:
            report.conflicts_resolved += 1
    kept.sort(key=lambda e: (e.module_code, e.semester, e.week_index, e.student_id))
    report.rows_kept = len(kept)
    report.check()
    return kept, report


def aggregate(
    events: list[AttendanceEvent],
    roster: list[RosterEntry] | None = None,
    weeks_total: int = 11,
) -> tuple[list[ModuleTermRecord], list[str]]:
    """Roll cleaned events up into one record per module-semester.

    A week counts as taken iff at least one event (present or absent)
    exists for it. The weekly denominator Y comes from the roster when
    given, otherwise from the distinct students observed for the module
    over the whole semester. Returns the records plus diagnostics for
    records rejected because a week's present count exceeded the roster
    (corrupt data is dropped, never clamped). Roster modules with no
    events at all are emitted flagged, with zero taken weeks.
    """
    if weeks_total < 1:
        raise ValueError(f"weeks_total must be >= 1, got {weeks_total}")
    for event in events:
        if event.week_index > weeks_total:
            raise WeekOutOfRange(
                f"{event.module_code} week {event.week_index} beyond weeks_total {weeks_total}"
            )

    roster_map: dict[tuple[str, int], int] = {}
    for entry in roster or []:
        roster_map[(entry.module_code, entry.semester)] = entry.registered

    present: dict[tuple[str, int], dict[int, int]] = {}
    students: dict[tuple[str, int], set[str]] = {}
    for event in events:
        key = (event.module_code, event.semester)
        weeks = present.setdefault(key, {})
        weeks.setdefault(event.week_index, 0)
        if event.present:
            weeks[event.week_index] += 1
        students.setdefault(key, set()).add(event.student_id)

    keys = sorted(set(present) | set(roster_map))
    records: list[ModuleTermRecord] = []
    rejections: list[str] = []
    for key in keys:
        module_code, semester = key
        if key not in present:
            records.append(ModuleTermRecord(module_code, semester, weeks_total, ()))
            continue
        registered = roster_map.get(key, len(students[key]))
        observations = []
        corrupt = None
        for week in sorted(present[key]):
            attended = present[key][week]
            if attended > registered:
                corrupt = (
                    f"{module_code} semester {semester} week {week}: "
                    f"{attended} present exceeds {registered} registered"
                )
                break
            observations.append(WeekObservation(week, attended, registered, taken=True))
        if corrupt:
            rejections.append(corrupt)
            continue
        records.append(ModuleTermRecord(module_code, semester, weeks_total, tuple(observations)))
    return records, rejections


# --- CSV surfaces -----------------------------------------------------------


def read_events_csv(path) -> tuple[list[AttendanceEvent], CleaningReport]:
    with open(path, "rb") as fh:
        return parse_events(fh)


def write_events_csv(events: list[AttendanceEvent], fh) -> None:
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(EVENTS_HEADER)
    for e in events:
        writer.writerow([e.student_id, e.module_code, e.semester, e.week_index, e.status])


def read_roster_csv(path) -> list[RosterEntry]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeader("roster CSV is empty") from None
        if tuple(c.strip() for c in header) != ROSTER_HEADER:
            raise MissingHeader(f"expected header {','.join(ROSTER_HEADER)}")
        entries = []
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise ValueError(f"roster row has {len(row)} fields: {row}")
            module_code, semester_s, registered_s = (c.strip() for c in row)
            if semester_s not in ("1", "2"):
                raise ValueError(f"roster row has bad semester: {row}")
            entries.append(RosterEntry(module_code, int(semester_s), int(registered_s)))
        return entries


def score_rows(records: list[ModuleTermRecord]) -> list[tuple]:
    """Turn records into aggregate-CSV rows; flagged records get blanks."""
    rows = []
    for r in records:
        if r.flagged:
            rows.append((r.module_code, r.semester, r.weeks_total, 0, None, None, 0))
        else:
            rows.append(
                (
                    r.module_code,
                    r.semester,
                    r.weeks_total,
                    r.taken_count,
                    r.attend_avg,
                    r.sac,
                    strength_bin(r.sac).value,
                )
            )
    return rows


def read_module_inputs_csv(path) -> list[tuple]:
    """Read pre-aggregated module inputs and score them.

    Expects header ``module_code,semester,weeks_total,attendance_taken,attend_avg``;
    returns the same row shape as :func:`score_rows`.
    """
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise MissingHeader("module inputs CSV is empty") from None
        if tuple(c.strip() for c in header) != MODULE_INPUT_HEADER:
            raise MissingHeader(f"expected header {','.join(MODULE_INPUT_HEADER)}")
        rows = []
        for row in reader:
            if not row:
                continue
            module_code, semester_s, weeks_s, taken_s, avg_s = (c.strip() for c in row)
            semester, weeks, taken = int(semester_s), int(weeks_s), int(taken_s)
            if taken == 0:
                rows.append((module_code, semester, weeks, 0, None, None, 0))
                continue
            avg = float(avg_s)
            value = sac_score(avg, taken, weeks)
            rows.append((module_code, semester, weeks, taken, avg, value, strength_bin(value).value))
        return rows


def write_aggregate_csv(rows: list[tuple], fh) -> None:
    """Write scored rows: attend_avg to 1 decimal, sac to 3, blanks when flagged."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(AGGREGATE_HEADER)
    for module_code, semester, weeks, taken, avg, value, strength in rows:
        writer.writerow(
            [
                module_code,
                semester,
                weeks,
                taken,
                "" if avg is None else f"{avg:.1f}",
                "" if value is None else f"{value:.3f}",
                strength,
            ]
        )
