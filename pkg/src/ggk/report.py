from dataclasses import dataclass, field


@dataclass
class Report:
    """Outcome of a check: ``status`` is ``"ok"`` or ``"fail"``, witnesses explain failures."""

    check: str
    witnesses: list = field(default_factory=list)
    model: str = None
    details: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.witnesses

    @property
    def status(self):
        return "ok" if self.ok else "fail"

    def to_dict(self):
        out = {"check": self.check, "model": self.model, "status": self.status,
               "witnesses": self.witnesses}
        if self.details:
            out["details"] = self.details
        return out
