"""Knowledge base of UI toolkit listeners, registration methods, and widgets.

The catalog is data: a line-oriented text file (see
``data/default_catalog.txt`` for the format) is embedded as the built-in
default and user files may extend it.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

CATALOG_ENV = "BLOBSMELL_CATALOG"


class CatalogError(ValueError):
    pass


def _simple(name: str) -> str:
    return name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class ListenerSpec:
    toolkit: str
    interface: str  # qualified
    handlers: tuple[tuple[str, str], ...]  # (method name, event type)

    @property
    def simple_name(self) -> str:
        return _simple(self.interface)

    @property
    def handler_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.handlers)

    def event_type(self, handler: str) -> Optional[str]:
        return dict(self.handlers).get(handler)

    @property
    def is_functional(self) -> bool:
        """Whether the interface can be implemented by a lambda."""
        return len(self.handlers) == 1


@dataclass(frozen=True)
class WidgetSpec:
    toolkit: str
    type_name: str  # qualified
    registrations: tuple[str, ...]

    @property
    def simple_name(self) -> str:
        return _simple(self.type_name)


@dataclass
class Catalog:
    listeners: dict[tuple[str, str], ListenerSpec] = field(default_factory=dict)
    adapters: dict[tuple[str, str], tuple[ListenerSpec, ...]] = field(default_factory=dict)
    registrations: dict[tuple[str, str], ListenerSpec] = field(default_factory=dict)
    widgets: dict[tuple[str, str], WidgetSpec] = field(default_factory=dict)
    identities: dict[str, str] = field(default_factory=dict)  # setter -> getter
    sources: set[str] = field(default_factory=set)
    toolkits: list[str] = field(default_factory=list)  # in declaration order

    # -- lookups ---------------------------------------------------------------

    def _pick(self, table: dict, name: str, imports: Sequence[str]):
        if "." in name:
            for (_, qualified), value in table.items():
                if qualified == name:
                    return value
            name = _simple(name)
        candidates = [(q, v) for (_, q), v in table.items() if _simple(q) == name]
        if not candidates:
            return None
        explicit = [imp for imp in imports if _simple(imp) == name]
        if explicit:
            for qualified, value in candidates:
                if qualified in explicit:
                    return value
            return None  # imported from somewhere the catalog does not know
        packages = {imp for imp in imports}
        for qualified, value in candidates:
            if qualified.rsplit(".", 1)[0] in packages:
                return value
        hint = toolkit_hint(imports)
        if hint:
            for qualified, value in candidates:
                if getattr(value, "toolkit", None) == hint:
                    return value
        return candidates[0][1]

    def is_listener_type(self, name: str, imports: Sequence[str] = ()) -> Optional[ListenerSpec]:
        return self._pick(self.listeners, name, imports)

    def adapter_specs(self, name: str, imports: Sequence[str] = ()) -> tuple[ListenerSpec, ...]:
        found = self._pick(self.adapters, name, imports)
        return found or ()

    def listener_specs_for_type(self, name: str, imports: Sequence[str] = ()) -> tuple[ListenerSpec, ...]:
        """Listener specs implemented by a supertype named ``name``."""
        spec = self.is_listener_type(name, imports)
        if spec is not None:
            return (spec,)
        return self.adapter_specs(name, imports)

    def registration(self, method: str, imports: Sequence[str] = ()) -> Optional[ListenerSpec]:
        candidates = [spec for (tk, m), spec in self.registrations.items() if m == method]
        if not candidates:
            return None
        hint = toolkit_hint(imports)
        for spec in candidates:
            if spec.toolkit == hint:
                return spec
        return candidates[0]

    def is_registration(self, method: str) -> bool:
        return any(m == method for _, m in self.registrations)

    def widget(self, name: str, imports: Sequence[str] = ()) -> Optional[WidgetSpec]:
        return self._pick(self.widgets, name, imports)

    def identity_getter(self, setter: str) -> Optional[str]:
        return self.identities.get(setter)

    @property
    def identity_getters(self) -> frozenset[str]:
        return frozenset(self.identities.values())

    @property
    def identity_setters(self) -> frozenset[str]:
        return frozenset(self.identities)

    def all_handler_names(self) -> frozenset[str]:
        return frozenset(h for spec in self.listeners.values() for h in spec.handler_names)


_TOOLKIT_PREFIXES = (
    ("org.eclipse.swt", "SWT"),
    ("javafx", "JavaFX"),
    ("javax.swing", "Swing"),
    ("java.awt", "Swing"),
)


def toolkit_hint(imports: Iterable[str]) -> Optional[str]:
    for imp in imports:
        for prefix, toolkit in _TOOLKIT_PREFIXES:
            if imp.startswith(prefix):
                return toolkit
    return None


def is_listener_type(catalog: Catalog, name: str, imports: Sequence[str] = ()) -> Optional[ListenerSpec]:
    return catalog.is_listener_type(name, imports)


# -- loading -------------------------------------------------------------------

def _parse_lines(text: str, origin: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split(), f"{origin}:{lineno}"


def _extend(catalog: Catalog, sources: Sequence[tuple[str, str]]) -> None:
    """Add entries from ``(text, origin)`` sources, in order."""
    groups: dict[tuple[str, str], list[str]] = {}
    pending_adapters = []
    pending_registrations = []
    entries = [entry for text, origin in sources for entry in _parse_lines(text, origin)]
    for _, parts, where in entries:
        kind = parts[0]
        if kind not in ("listener", "adapter", "register", "group", "widget", "identity", "source"):
            raise CatalogError(f"{where}: unknown entry kind {kind!r}")
        if len(parts) < 3:
            raise CatalogError(f"{where}: incomplete {kind} entry")
        toolkit = parts[1]
        if toolkit not in catalog.toolkits:
            catalog.toolkits.append(toolkit)
        args = parts[2:]
        if kind == "listener":
            if len(args) < 2:
                raise CatalogError(f"{where}: listener needs at least one handler")
            handlers = []
            for item in args[1:]:
                method, sep, event = item.partition(":")
                if not sep or not method or not event or ":" in event:
                    raise CatalogError(f"{where}: handler {item!r} must be method:EventType")
                handlers.append((method, event))
            key = (toolkit, args[0])
            if any(tk == toolkit and _simple(q) == _simple(args[0]) for tk, q in catalog.listeners):
                raise CatalogError(f"{where}: duplicate listener {args[0]} for {toolkit}")
            catalog.listeners[key] = ListenerSpec(toolkit, args[0], tuple(handlers))
        elif kind == "adapter":
            if len(args) < 2:
                raise CatalogError(f"{where}: adapter needs interfaces")
            pending_adapters.append((toolkit, args[0], args[1:], where))
        elif kind == "register":
            if len(args) != 2:
                raise CatalogError(f"{where}: register takes a method and an interface")
            pending_registrations.append((toolkit, args[0], args[1], where))
        elif kind == "group":
            groups[(toolkit, args[0])] = args[1:]
        elif kind == "widget":
            methods: list[str] = []
            for item in args[1:]:
                methods.extend(_expand(item, toolkit, groups, where))
            key = (toolkit, args[0])
            if key in catalog.widgets:
                raise CatalogError(f"{where}: duplicate widget {args[0]} for {toolkit}")
            catalog.widgets[key] = WidgetSpec(toolkit, args[0], tuple(dict.fromkeys(methods)))
        elif kind == "identity":
            if len(args) != 2:
                raise CatalogError(f"{where}: identity takes a setter and a getter")
            catalog.identities[args[0]] = args[1]
        elif kind == "source":
            catalog.sources.update(args)

    def resolve(toolkit: str, name: str, where: str) -> ListenerSpec:
        for (tk, qualified), spec in catalog.listeners.items():
            if tk == toolkit and (qualified == name or _simple(qualified) == name):
                return spec
        raise CatalogError(f"{where}: unknown {toolkit} listener interface {name!r}")

    for toolkit, cls, interfaces, where in pending_adapters:
        key = (toolkit, cls)
        if key in catalog.adapters:
            raise CatalogError(f"{where}: duplicate adapter {cls}")
        catalog.adapters[key] = tuple(resolve(toolkit, i, where) for i in interfaces)
    for toolkit, method, interface, where in pending_registrations:
        key = (toolkit, method)
        if key in catalog.registrations:
            raise CatalogError(f"{where}: duplicate registration {method} for {toolkit}")
        catalog.registrations[key] = resolve(toolkit, interface, where)
    known = {m for (_, m) in catalog.registrations}
    for spec in catalog.widgets.values():
        for method in spec.registrations:
            if method not in known:
                raise CatalogError(f"widget {spec.type_name} uses unknown "
                                   f"registration {method!r}")


def _expand(item: str, toolkit: str, groups, where: str, depth: int = 0) -> list[str]:
    if not item.startswith("$"):
        return [item]
    if depth > 8 or (toolkit, item[1:]) not in groups:
        raise CatalogError(f"{where}: unknown group {item!r}")
    out = []
    for sub in groups[(toolkit, item[1:])]:
        out.extend(_expand(sub, toolkit, groups, where, depth + 1))
    return out


def builtin_text() -> str:
    return resources.files("blobsmell").joinpath("data/default_catalog.txt").read_text("utf-8")


def load_catalog(path: Optional[os.PathLike | str] = None) -> Catalog:
    """Built-in catalog, extended with the entries of ``path`` when given.

    Extension files may refer to built-in groups and interfaces; redefining
    a built-in entry is a :class:`CatalogError`.
    """
    sources = [(builtin_text(), "<builtin>")]
    if path is not None:
        path = Path(path)
        try:
            sources.append((path.read_text(encoding="utf-8"), str(path)))
        except OSError as exc:
            raise CatalogError(f"cannot read catalog {path}: {exc}") from exc
    catalog = Catalog()
    _extend(catalog, sources)
    return catalog


_DEFAULT: Optional[Catalog] = None


def default_catalog() -> Catalog:
    """Built-in catalog, extended by ``$BLOBSMELL_CATALOG`` when set."""
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_catalog(os.environ.get(CATALOG_ENV) or None)
    return _DEFAULT
