"""
Derivation reports

A report collects what a command computed and which identities it checked,
and renders it as text (the expression grammar), standalone LaTeX or JSON
(schema ``jetvar-report/1``). Everything but the timing is deterministic.
"""
import json
from dataclasses import dataclass

import sympy

from jetvar.lib.grammar import render_latex
from jetvar.lib.logger import get_logger
from jetvar.lib.symexpr import render_text

SCHEMA = "jetvar-report/1"
FORMATS = ("text", "latex", "json")

log = get_logger("jetvar.report")


@dataclass
class Check:
    name: str
    passed: bool
    required: bool = True
    detail: str = ""


def _plain(value):
    """
    Reportable value: expressions as canonical text, mappings recursively
    """
    if isinstance(value, dict):
        return {str(key): _plain(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(item) for item in value]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        return value
    if isinstance(value, sympy.Basic):
        return render_text(value)
    return str(value)


_TEX_SPECIAL = {"\\": r"\textbackslash{}", "_": r"\_", "#": r"\#", "%": r"\%", "&": r"\&", "{": r"\{", "}": r"\}",
                "^": r"\^{}", "$": r"\$", "~": r"\~{}"}


def _tex_escape(text):
    return "".join(_TEX_SPECIAL.get(character, character) for character in text)


class Report:
    """
    Results and verification summary of one derivation command
    """
    def __init__(self, command, bundle, source="", generator=None, options=None):
        """
        :param str command:  Command name
        :param ModelBundle bundle:  The model the command ran on
        :param str source:  Model file as given on the command line
        :param str generator:  Generator name, if any
        :param dict options:  Effective run options (order cap, probe points, seed)
        """
        self.command = command
        self.context = bundle.context
        self.model = bundle.source.name if bundle.source and bundle.source.name else bundle.spec.id
        self.digest = bundle.source.digest if bundle.source else ""
        self.source = str(source)
        self.generator = generator
        self.options = dict(options or {})
        self.results = {}
        self.checks = []
        self.log_lines = []
        self.status = ""
        self.seconds = None

    def log(self, message):
        """
        Add a line to the report log
        """
        self.log_lines.append(message)
        log.info(message)

    def update_status(self, message, is_final=False):
        self.status = message
        log.debug(message)
        if is_final:
            self.log(message)

    def add_result(self, name, value):
        """
        :param str name:  Result name, e.g. "E"
        :param value:  Expression, number, flag or a mapping of text keys to
        expressions
        """
        self.results[name] = value

    def add_check(self, name, passed, required=True, detail=""):
        """
        Record a verified identity

        :param bool required:  Informational checks never fail a report
        """
        self.checks.append(Check(name, bool(passed), required, detail))
        if not passed:
            self.log(f"Check '{name}' {'failed' if required else 'is false'}{': ' + detail if detail else ''}")

    @property
    def passed(self):
        return all(check.passed for check in self.checks if check.required)

    @property
    def exit_code(self):
        return 0 if self.passed else 2

    def finish(self, seconds):
        self.seconds = seconds
        self.update_status(f"Finished '{self.command}', {'all checks passed' if self.passed else 'checks failed'}",
                           is_final=True)

    def as_dict(self, timing=True):
        document = {
            "schema": SCHEMA,
            "command": self.command,
            "model": self.model,
            "source": self.source,
            "digest": self.digest,
            "generator": self.generator,
            "options": _plain(self.options),
            "results": _plain(self.results),
            "checks": [{"name": check.name, "passed": check.passed, "required": check.required,
                        "detail": check.detail} for check in self.checks],
            "status": "pass" if self.passed else "fail",
            "log": list(self.log_lines),
        }
        if timing:
            document["timing"] = {"seconds": round(self.seconds or 0, 3)}
        return document

    def render(self, format="text", timing=True):
        """
        Render the report

        :param str format:  text, latex or json
        :param bool timing:  Include the (non-deterministic) run time
        :return str:
        """
        if format == "json":
            return json.dumps(self.as_dict(timing=timing), sort_keys=True, indent=2, ensure_ascii=False) + "\n"
        if format == "latex":
            return self.render_latex(timing=timing)
        if format == "text":
            return self.render_text(timing=timing)
        raise ValueError(f"Unknown format '{format}', use one of {', '.join(FORMATS)}")

    def render_text(self, timing=True):
        out = [SCHEMA,
               f"command: {self.command}",
               f"model: {self.model} ({self.source})" if self.source else f"model: {self.model}",
               f"digest: {self.digest}",
               f"generator: {self.generator or '-'}",
               "options: " + " ".join(f"{key}={value}" for key, value in sorted(_plain(self.options).items())),
               "", "[results]"]
        for name, value in _plain(self.results).items():
            if isinstance(value, dict):
                if not value:
                    out.append(f"{name} = (none)")
                out.extend(f"{name}[{key}] = {item}" for key, item in value.items())
            else:
                out.append(f"{name} = {value}")

        out.extend(["", "[checks]"])
        for check in self.checks:
            status = "pass" if check.passed else "FAIL" if check.required else "no"
            note = "" if check.required else " (informational)"
            out.append(f"{status:<4}  {check.name}{note}{': ' + check.detail if check.detail else ''}")
        out.append(f"status: {'pass' if self.passed else 'fail'}")

        if self.log_lines:
            out.extend(["", "[log]"] + self.log_lines)
        if timing:
            out.append(f"timing: {self.seconds or 0:.3f} s")
        return "\n".join(out) + "\n"

    def render_latex(self, timing=True):
        def math(value):
            if isinstance(value, sympy.Basic):
                return render_latex(value, self.context)
            if isinstance(value, bool):
                return r"\text{" + ("true" if value else "false") + "}"
            return r"\text{" + _tex_escape(str(value)) + "}"

        out = [r"\documentclass{article}",
               r"\usepackage{amsmath}",
               r"\usepackage[margin=2cm]{geometry}",
               r"\allowdisplaybreaks",
               r"\begin{document}",
               r"\section*{" + _tex_escape(f"jetvar {self.command}: {self.model}") + "}",
               r"\begin{itemize}",
               r"\item digest: \texttt{" + _tex_escape(self.digest) + "}",
               r"\item generator: \texttt{" + _tex_escape(self.generator or "-") + "}",
               r"\end{itemize}",
               r"\subsection*{Results}"]
        for name, value in self.results.items():
            items = value.items() if isinstance(value, dict) else [("", value)]
            out.append(r"\begin{align*}")
            lines = []
            for key, item in items:
                label = _tex_escape(f"{name}[{key}]" if key != "" else name)
                lines.append(r"\texttt{" + label + "} &= " + math(item))
            out.append((" \\\\\n").join(lines) if lines else r"\texttt{" + _tex_escape(name) + r"} &= \text{(none)}")
            out.append(r"\end{align*}")

        out.append(r"\subsection*{Checks}")
        out.append(r"\begin{itemize}")
        for check in self.checks:
            status = "pass" if check.passed else "fail"
            note = "" if check.required else " (informational)"
            out.append(r"\item \textbf{" + status + "} " + _tex_escape(check.name + note)
                       + (": " + _tex_escape(check.detail) if check.detail else ""))
        out.append(r"\end{itemize}")
        out.append(r"Status: \textbf{" + ("pass" if self.passed else "fail") + "}")
        if timing:
            out.append(r"\par Timing: " + f"{self.seconds or 0:.3f}" + " s")
        out.append(r"\end{document}")
        return "\n".join(out) + "\n"
