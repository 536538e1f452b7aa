"""Structured check reports (exhaustive violation lists rather than exceptions)."""

from dataclasses import dataclass, field


@dataclass
class Report:
    title: str
    violations: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok

    def check(self, condition, label, **detail):
        self.checked += 1
        if not condition:
            self.violations.append((label, detail))
        return condition

    def extend(self, other, prefix=None):
        self.checked += other.checked
        for label, detail in other.violations:
            self.violations.append(((prefix + ": " + label) if prefix else label, detail))
        return self

    def labels(self):
        return [label for label, _ in self.violations]

    def __repr__(self):
        return "Report(%r, ok=%s, checked=%d, violations=%d)" % (
            self.title, self.ok, self.checked, len(self.violations))
