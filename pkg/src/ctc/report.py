"""Check reports with a byte-deterministic JSON rendering.

The JSON form carries exactly the fields ``check``, ``status``, and
``witness`` per item, serialized with sorted keys and no whitespace, so
identical inputs produce identical bytes no matter how the checks were
scheduled.  Elapsed times are kept on the items for the human-readable
text rendering only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

__all__ = ["Item", "Report"]

_STATUS = ("pass", "fail", "error")


@dataclass
class Item:
    check: str
    status: str
    witness: object | None = None
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in _STATUS:
            raise ValueError("bad status %r" % (self.status,))


@dataclass
class Report:
    items: list[Item] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(item.status == "pass" for item in self.items)

    @property
    def exit_code(self) -> int:
        if any(item.status == "error" for item in self.items):
            return 2
        if any(item.status == "fail" for item in self.items):
            return 1
        return 0

    def append(self, check: str, status: str, witness=None, elapsed: float = 0.0):
        self.items.append(Item(check, status, witness, elapsed))

    def extend(self, other: "Report"):
        self.items.extend(other.items)

    def failing(self) -> list[Item]:
        return [i for i in self.items if i.status != "pass"]

    def to_json_bytes(self) -> bytes:
        payload = {
            "items": [
                {"check": i.check, "status": i.status, "witness": i.witness}
                for i in self.items
            ]
        }
        return json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()

    def to_text(self) -> str:
        lines = []
        width = max((len(i.check) for i in self.items), default=0)
        for i in self.items:
            line = "%-*s  %-5s  %7.1f ms" % (width, i.check, i.status, i.elapsed * 1000)
            if i.witness is not None and i.status != "pass":
                line += "\n    witness: %s" % json.dumps(i.witness, sort_keys=True)
            lines.append(line)
        tally = "%d checks, %d failed, %d errored" % (
            len(self.items),
            sum(1 for i in self.items if i.status == "fail"),
            sum(1 for i in self.items if i.status == "error"),
        )
        lines.append(tally)
        return "\n".join(lines)
