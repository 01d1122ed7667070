"""Check and report containers shared by the validators and the CLI."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Check:
    """One verified (or violated) identity, with enough location data to
    find the offending degree or index pair."""

    name: str
    location: str = ""
    outcome: str = "pass"
    detail: str = ""

    @property
    def passed(self):
        return self.outcome == "pass"


@dataclass
class Report:
    status: str = "pass"
    checks: list = field(default_factory=list)
    artifacts: dict = field(default_factory=dict)

    def add(self, check):
        self.checks.append(check)
        if check.outcome == "fail":
            self.status = "fail"
        elif check.outcome == "uncertified" and self.status == "pass":
            self.status = "uncertified"

    def extend(self, checks):
        for c in checks:
            self.add(c)

    @property
    def passed(self):
        return self.status == "pass"


def fail(name, location="", detail=""):
    return Check(name=name, location=location, outcome="fail", detail=detail)


def passed(name, location="", detail=""):
    return Check(name=name, location=location, outcome="pass", detail=detail)


def uncertified(name, location="", detail=""):
    return Check(name=name, location=location, outcome="uncertified", detail=detail)
