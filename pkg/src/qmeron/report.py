"""Report assembly and canonical JSON/text rendering."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .scenarios import Check, Context, Outcome, Scenario, resolve_parameters, sign_resolutions


@dataclass
class Report:
    scenario: str
    parameters: dict[str, str]
    checks: list[Check]
    presentation_assumptions: list[str] = field(default_factory=list)
    sign_resolutions: list[str] = field(default_factory=list)
    is_solution: bool | None = None
    artifacts: dict[str, str] = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if all(c.passed for c in self.checks) else "fail"

    def to_dict(self) -> dict:
        return {
            "scenario": self.scenario,
            "parameters": self.parameters,
            "checks": [
                {"name": c.name, "paper_anchor": c.paper_anchor, "status": c.status, "residual": c.residual}
                for c in self.checks
            ],
            "engine": {
                "presentation_assumptions": self.presentation_assumptions,
                "sign_resolutions": self.sign_resolutions,
            },
            "is_solution": self.is_solution,
            "artifacts": self.artifacts,
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"scenario: {self.scenario}"]
        for k, v in self.parameters.items():
            lines.append(f"  {k} = {v}")
        for c in self.checks:
            lines.append(f"[{c.status.upper()}] {c.name} ({c.paper_anchor})")
            if not c.passed:
                lines.append(f"    residual: {c.residual}")
        for k, v in self.artifacts.items():
            lines.append(f"{k}: {v}")
        if self.is_solution is not None:
            lines.append(f"is_solution: {'yes' if self.is_solution else 'no'}")
        for a in self.presentation_assumptions:
            lines.append(f"assumption: {a}")
        for s in self.sign_resolutions:
            lines.append(f"sign resolution: {s}")
        lines.append(f"status: {self.status}")
        return "\n".join(lines) + "\n"


def _fmt(v: Fraction | None) -> str:
    if v is None:
        return "symbolic"
    return str(v)


def run_scenario(scenario: Scenario, params: dict[str, Fraction] | None = None, q: Fraction | None = None) -> Report:
    resolved = resolve_parameters(scenario, params or {})
    bindings = {k: v for k, v in resolved.items() if v is not None}
    ctx = Context(bindings, q)
    out = Outcome()
    scenario.runner(ctx, out)
    shown = {k: _fmt(v) for k, v in resolved.items()}
    shown["q"] = _fmt(q)
    return Report(
        scenario.id,
        shown,
        out.checks,
        out.assumptions,
        list(sign_resolutions()),
        out.is_solution,
        out.artifacts,
    )
