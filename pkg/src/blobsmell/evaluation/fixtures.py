"""Synthetic listener corpora with their ground truth.

Each generated file holds one listener written in a given style (listener
class, anonymous class, lambda) using a given way of telling widgets apart.
Line numbers of listeners, handlers and anchors are recorded while the code
is emitted, so the truth does not depend on the detector.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .truth import GroundTruth, ExpectedListener

STYLES = ("Class", "Anonymous", "Lambda")
VARIANTS = ("Property", "TypeCheck", "Reference", "SwitchCase", "WholeBody")

ACTION_WIDGETS = ("JButton", "JMenuItem", "JCheckBox", "JRadioButton", "JToggleButton",
                  "JTextField", "JComboBox")
_ACTIONS = ("save", "load", "print", "close", "undo", "redo", "copy", "paste", "zoom",
            "reset", "refresh", "export", "import", "search", "sort", "filter")
_KEYS = ("VK_UP", "VK_DOWN", "VK_LEFT", "VK_RIGHT", "VK_ENTER", "VK_ESCAPE", "VK_DELETE",
         "VK_HOME", "VK_END", "VK_TAB")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class MixEntry:
    style: str
    variant: str
    n_commands: int
    count: int = 1

    def validate(self) -> None:
        if self.style not in STYLES:
            raise SpecError(f"unknown style {self.style!r}")
        if self.variant not in VARIANTS:
            raise SpecError(f"unknown variant {self.variant!r}")
        if self.n_commands < 1 or self.count < 0:
            raise SpecError("n_commands must be >= 1 and count >= 0")
        if self.variant == "WholeBody" and self.n_commands != 1:
            raise SpecError("a whole-body listener has exactly one command")
        if self.variant == "TypeCheck" and self.n_commands > len(ACTION_WIDGETS):
            raise SpecError(f"type checks need one widget type per command (at most {len(ACTION_WIDGETS)})")
        if self.variant == "SwitchCase" and self.n_commands > len(_KEYS):
            raise SpecError(f"at most {len(_KEYS)} key cases are supported")

    @property
    def blob_kind(self) -> str:
        if self.n_commands < 2:
            return "-"
        identity = self.variant in ("Property", "TypeCheck", "Reference")
        return "type1" if self.style == "Class" and identity else "type2"


@dataclass
class Corpus:
    files: dict[str, str]
    truth: GroundTruth


class _Writer:
    def __init__(self) -> None:
        self.lines: list[str] = []

    def add(self, line: str = "") -> int:
        """Append a line and return its 1-based number."""
        self.lines.append(line)
        return len(self.lines)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


class _Gen:
    def __init__(self, entry: MixEntry, idx: int, rng: random.Random):
        self.e = entry
        self.idx = idx
        self.rng = rng
        self.cls = f"Gen{entry.style}{entry.variant}{idx}"
        self.path = f"gen/{self.cls}.java"
        self.w = _Writer()
        self.commands: list[tuple[int, object]] = []  # (handler line, anchor line or "*")
        self.listener_line = 0
        n = entry.n_commands
        if entry.variant == "TypeCheck":
            types = list(ACTION_WIDGETS)
            rng.shuffle(types)
            self.types = types[:n]
        else:
            self.types = [rng.choice(ACTION_WIDGETS[:3]) for _ in range(n)]
        self.actions = [f"{rng.choice(_ACTIONS)}{i}" for i in range(n)]
        self.keys = rng.sample(_KEYS, n) if entry.variant == "SwitchCase" else []
        self.event = rng.choice(("e", "evt", "event"))
        self.ind = " " * rng.choice((2, 4))

    # -- pieces --------------------------------------------------------------

    def body_statements(self, i: int) -> list[str]:
        act = self.actions[i]
        stmts = [f"model.{act}();"]
        if self.rng.random() < 0.4:
            stmts.append(f"status.setText(\"{act} done\");")
        return stmts

    def imports(self) -> list[str]:
        e = self.e
        if e.style == "Lambda" and e.variant == "SwitchCase":
            return ["import org.eclipse.swt.SWT;", "import org.eclipse.swt.widgets.Label;",
                    "import org.eclipse.swt.widgets.Text;"]
        out = []
        if e.variant == "SwitchCase":
            out += ["import java.awt.event.KeyEvent;"]
            if e.style != "Lambda":
                out += ["import java.awt.event.KeyListener;" if e.style == "Class"
                        else "import java.awt.event.KeyAdapter;"]
            out += ["import javax.swing.JTextField;"]
        else:
            out += ["import java.awt.event.ActionEvent;"]
            if e.style != "Lambda":
                out += ["import java.awt.event.ActionListener;"]
            out += [f"import javax.swing.{t};" for t in sorted(set(self.types))]
        out.append("import javax.swing.JLabel;")
        return sorted(set(out))

    def condition(self, i: int, src: Optional[str], cmd: Optional[str]) -> str:
        v, ev = self.e.variant, self.event
        if v == "Property":
            getter = cmd or f"{ev}.getActionCommand()"
            return self.rng.choice((f"\"{self.actions[i]}\".equals({getter})",
                                    f"{getter}.equals(\"{self.actions[i]}\")"))
        if v == "TypeCheck":
            return f"{src or ev + '.getSource()'} instanceof {self.types[i]}"
        if v == "Reference":
            return f"{src or ev + '.getSource()'} == w{i}"
        raise AssertionError(v)

    def handler_body(self, depth: int, handler_line_ref: list[int]) -> None:
        """Emit the statements of the handler at indentation ``depth``."""
        e, w, ind, ev = self.e, self.w, self.ind, self.event
        pad = ind * depth
        hline = handler_line_ref[0]
        if e.variant == "WholeBody":
            w.add(f"{pad}model.{self.actions[0]}();")
            if self.rng.random() < 0.5:
                w.add(f"{pad}if (model.isDirty()) {{")
                w.add(f"{pad}{ind}status.setText(\"dirty\");")
                w.add(f"{pad}}}")
            self.commands.append((hline, "*"))
            return
        if e.variant == "SwitchCase":
            selector = f"{ev}.keyCode" if e.style == "Lambda" else f"{ev}.getKeyCode()"
            w.add(f"{pad}switch ({selector}) {{")
            for i in range(e.n_commands):
                label = f"'{chr(ord('a') + i)}'" if e.style == "Lambda" else f"KeyEvent.{self.keys[i]}"
                line = w.add(f"{pad}{ind}case {label}:")
                for s in self.body_statements(i):
                    w.add(f"{pad}{ind * 2}{s}")
                w.add(f"{pad}{ind * 2}break;")
                self.commands.append((hline, line))
            if self.rng.random() < 0.5:
                w.add(f"{pad}{ind}default:")
                w.add(f"{pad}{ind * 2}break;")
            w.add(f"{pad}}}")
            return
        src = cmd = None
        if e.variant in ("TypeCheck", "Reference") and self.rng.random() < 0.6:
            src = "src"
            w.add(f"{pad}Object src = {ev}.getSource();")
        if e.variant == "Property" and self.rng.random() < 0.5:
            cmd = "cmd"
            w.add(f"{pad}String cmd = {ev}.getActionCommand();")
        if self.rng.random() < 0.3:
            w.add(f"{pad}model.touch();")
        sequential = self.rng.random() < 0.35
        for i in range(e.n_commands):
            cond = self.condition(i, src, cmd)
            if i == 0 or sequential:
                line = w.add(f"{pad}if ({cond}) {{")
            else:
                line = w.add(f"{pad}}} else if ({cond}) {{")
            for s in self.body_statements(i):
                w.add(f"{pad}{ind}{s}")
            if sequential:
                w.add(f"{pad}{ind}return;")
                w.add(f"{pad}}}")
            self.commands.append((hline, line))
        if not sequential:
            w.add(f"{pad}}}")

    # -- whole files ------------------------------------------------------------

    def fields(self) -> None:
        ind = self.ind
        e = self.e
        if e.variant == "SwitchCase":
            kind = "Text" if e.style == "Lambda" else "JTextField"
            self.w.add(f"{ind}private {kind} input;")
        else:
            for i, t in enumerate(self.types):
                self.w.add(f"{ind}private {t} w{i};")
        self.w.add(f"{ind}private Model model;")
        self.w.add(f"{ind}private JLabel status;" if not (e.style == "Lambda" and e.variant == "SwitchCase")
                   else f"{ind}private Label status;")
        self.w.add()

    def widget_setup(self, pad: str, registration: Optional[str]) -> None:
        """Create widgets; ``registration`` is the listener argument, if registered here."""
        e, w = self.e, self.w
        if e.variant == "SwitchCase":
            kind = "Text" if e.style == "Lambda" else "JTextField"
            w.add(f"{pad}input = new {kind}();" if kind == "JTextField" else f"{pad}input = new Text(null, 0);")
            if registration is not None:
                w.add(f"{pad}input.addKeyListener({registration});")
            return
        for i, t in enumerate(self.types):
            w.add(f"{pad}w{i} = new {t}();")
            if e.variant == "Property":
                w.add(f"{pad}w{i}.setActionCommand(\"{self.actions[i]}\");")
            if registration is not None:
                w.add(f"{pad}w{i}.addActionListener({registration});")

    def class_style(self) -> None:
        e, w, ind, ev = self.e, self.w, self.ind, self.event
        iface = "KeyListener" if e.variant == "SwitchCase" else "ActionListener"
        self.listener_line = w.add(f"public class {self.cls} implements {iface} {{")
        self.fields()
        w.add(f"{ind}public {self.cls}() {{")
        self.widget_setup(ind * 2, "this")
        w.add(f"{ind}}}")
        w.add()
        if e.variant == "SwitchCase":
            w.add(f"{ind}@Override")
            hline = w.add(f"{ind}public void keyPressed(KeyEvent {ev}) {{")
            self.handler_body(2, [hline])
            w.add(f"{ind}}}")
            for other in ("keyReleased", "keyTyped"):
                w.add()
                w.add(f"{ind}@Override")
                w.add(f"{ind}public void {other}(KeyEvent {ev}) {{")
                w.add(f"{ind}}}")
        else:
            w.add(f"{ind}@Override")
            hline = w.add(f"{ind}public void actionPerformed(ActionEvent {ev}) {{")
            self.handler_body(2, [hline])
            w.add(f"{ind}}}")
        w.add("}")

    def registered_style(self) -> None:
        """Anonymous-class or lambda listener registered on the first widget."""
        e, w, ind, ev = self.e, self.w, self.ind, self.event
        w.add(f"public class {self.cls} {{")
        self.fields()
        w.add(f"{ind}public {self.cls}() {{")
        self.widget_setup(ind * 2, None)
        target = "input" if e.variant == "SwitchCase" else "w0"
        pad = ind * 2
        if e.style == "Anonymous":
            if e.variant == "SwitchCase":
                w.add(f"{pad}{target}.addKeyListener(")
                self.listener_line = w.add(f"{pad}{ind}new KeyAdapter() {{")
                w.add(f"{pad}{ind * 2}@Override")
                hline = w.add(f"{pad}{ind * 2}public void keyPressed(KeyEvent {ev}) {{")
            else:
                w.add(f"{pad}{target}.addActionListener(")
                self.listener_line = w.add(f"{pad}{ind}new ActionListener() {{")
                w.add(f"{pad}{ind * 2}@Override")
                hline = w.add(f"{pad}{ind * 2}public void actionPerformed(ActionEvent {ev}) {{")
            self.handler_body(5, [hline])
            w.add(f"{pad}{ind * 2}}}")
            w.add(f"{pad}{ind}}});")
        else:
            if e.variant == "SwitchCase":
                hline = w.add(f"{pad}{target}.addListener(SWT.KeyDown, {ev} -> {{")
            else:
                hline = w.add(f"{pad}{target}.addActionListener({ev} -> {{")
            self.listener_line = hline
            self.handler_body(3, [hline])
            w.add(f"{pad}}});")
        w.add(f"{ind}}}")
        w.add("}")

    def build(self) -> tuple[str, ExpectedListener]:
        for imp in self.imports():
            self.w.add(imp)
        self.w.add()
        if self.e.style == "Class":
            self.class_style()
        else:
            self.registered_style()
        iface = "ActionListener"
        if self.e.variant == "SwitchCase":
            iface = "Listener" if self.e.style == "Lambda" else "KeyListener"
        expected = ExpectedListener(self.path, self.listener_line, iface, self.e.n_commands, self.e.blob_kind)
        return self.w.text(), expected


def all_mixes(max_commands: int = 4, count: int = 1) -> list[MixEntry]:
    """Every valid style x variant x command-count combination."""
    out = []
    for style in STYLES:
        for variant in VARIANTS:
            counts = [1] if variant == "WholeBody" else range(1, max_commands + 1)
            for k in counts:
                out.append(MixEntry(style, variant, k, count))
    return out


def generate_fixtures(mix: Sequence[MixEntry], seed: int = 0) -> Corpus:
    """Deterministic corpus (one listener per file) plus ground truth."""
    for entry in mix:
        entry.validate()
    rng = random.Random(seed)
    files: dict[str, str] = {}
    truth = GroundTruth()
    idx = 0
    for entry in mix:
        for _ in range(entry.count):
            gen = _Gen(entry, idx, rng)
            text, expected = gen.build()
            files[gen.path] = text
            truth.files.add(gen.path)
            truth.listeners.append(expected)
            truth.commands.extend((gen.path, h, a) for h, a in gen.commands)
            idx += 1
    return Corpus(files, truth)
