import hashlib
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Tuple


def digest(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


@dataclass
class RunReport:
    """
    Plain-text report of one command: ``== <section> ==`` markers followed by
    the section's lines. Identical inputs and flags give identical bytes
    unless a timing section is added.
    """

    command: str
    inputs: List[Tuple[str, str]] = field(default_factory=list)
    sections: List[Tuple[str, List[str]]] = field(default_factory=list)
    elapsed: Optional[float] = None

    def add_input(self, name: str, text: str):
        self.inputs.append((name, digest(text)))

    def section(self, title: str, lines: Iterable[str]):
        self.sections.append((title, [str(line) for line in lines]))

    def render(self) -> str:
        out = ["== command ==", self.command]
        if self.inputs:
            out.append("== inputs ==")
            out += [f"sha256 {value} {name}" for name, value in self.inputs]
        for title, lines in self.sections:
            out.append(f"== {title} ==")
            out += lines
        if self.elapsed is not None:
            out += ["== timing ==", f"elapsed {self.elapsed:.3f} s"]
        return "\n".join(out) + "\n"
