"""
Report assembly. The text report is a sequence of blocks separated by blank
lines; the machine report is one JSON object per block.
"""
import json
from dataclasses import dataclass, field

from django.core.serializers.json import DjangoJSONEncoder

SCHEMA = "regulous-report/1"
INDENT = "  "


@dataclass(frozen=True)
class Block:
    index: int
    query: str
    kind: str
    lines: tuple = ()
    record: dict = field(default_factory=dict)
    error: str = None

    @classmethod
    def failure(cls, index, query, kind, error):
        message = f"{type(error).__name__}: {error}"
        return cls(index, query, kind, (f"error: {message}",), error=message)

    @property
    def failed(self):
        return self.error is not None

    def text(self):
        return "\n".join([f"[{self.index}] {self.query}"] + [INDENT + line for line in self.lines])

    def machine(self):
        record = {"schema": SCHEMA, "index": self.index, "query": self.query, "kind": self.kind}
        record.update(self.record)
        if self.failed:
            record["error"] = self.error
        return record


@dataclass(frozen=True)
class Report:
    blocks: tuple = ()

    @property
    def failed(self):
        return [b for b in self.blocks if b.failed]

    def text(self):
        if not self.blocks:
            return ""
        return "\n\n".join(b.text() for b in self.blocks) + "\n"

    def machine(self):
        return "".join(
            json.dumps(b.machine(), cls=DjangoJSONEncoder, sort_keys=True) + "\n" for b in self.blocks
        )


def listing(title, items):
    """A counted heading followed by one indented line per item"""
    items = [str(item) for item in items]
    return [f"{title}: {len(items)}"] + [INDENT + item for item in items]
