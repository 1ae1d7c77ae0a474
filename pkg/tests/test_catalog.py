import pytest

from blobsmell.catalog import CATALOG_ENV, CatalogError, load_catalog, toolkit_hint
import blobsmell.catalog as catalog_mod


@pytest.fixture(scope="module")
def cat():
    return load_catalog()


def test_builtin_covers_the_three_toolkits(cat):
    assert {"Swing", "SWT", "JavaFX"} <= set(cat.toolkits)
    assert cat.is_listener_type("ActionListener").handler_names == ("actionPerformed",)
    assert cat.is_listener_type("EventHandler", ["javafx.event.EventHandler"]).toolkit == "JavaFX"


def test_ambiguous_simple_names_follow_imports(cat):
    swing = cat.is_listener_type("KeyListener", ["java.awt.event.KeyListener"])
    swt = cat.is_listener_type("KeyListener", ["org.eclipse.swt.events.KeyListener"])
    assert swing.toolkit == "Swing" and swt.toolkit == "SWT"
    assert swt.handler_names == ("keyPressed", "keyReleased")
    assert cat.is_listener_type("KeyListener", ["com.example.KeyListener"]) is None


def test_adapters_expand_to_their_interfaces(cat):
    names = {s.simple_name for s in cat.adapter_specs("MouseAdapter", ["java.awt.event.MouseAdapter"])}
    assert names == {"MouseListener", "MouseMotionListener", "MouseWheelListener"}
    assert cat.listener_specs_for_type("KeyAdapter")[0].simple_name == "KeyListener"


def test_registrations_widgets_and_identities(cat):
    assert cat.registration("addActionListener").simple_name == "ActionListener"
    assert cat.is_registration("addKeyListener")
    assert not cat.is_registration("addItem")
    button = cat.widget("JButton", ["javax.swing.JButton"])
    assert "addActionListener" in button.registrations
    assert cat.identity_getter("setActionCommand") == "getActionCommand"
    assert {"getName", "getData", "getId"} <= cat.identity_getters
    assert {"getSource", "widget"} <= cat.sources


def test_functional_interfaces(cat):
    assert cat.is_listener_type("ActionListener").is_functional
    assert not cat.is_listener_type("MouseListener").is_functional


def test_toolkit_hint():
    assert toolkit_hint(["org.eclipse.swt.SWT"]) == "SWT"
    assert toolkit_hint(["java.util.List", "javax.swing.JButton"]) == "Swing"
    assert toolkit_hint(["java.util.List"]) is None


def test_extension_file_adds_entries(tmp_path):
    ext = tmp_path / "ext.txt"
    ext.write_text("listener Custom com.acme.PingListener ping:PingEvent\n"
                   "register Custom addPingListener PingListener\n"
                   "widget Custom com.acme.Pinger addPingListener\n")
    cat = load_catalog(ext)
    assert cat.registration("addPingListener").interface == "com.acme.PingListener"
    assert cat.widget("Pinger").registrations == ("addPingListener",)


@pytest.mark.parametrize("text, message", [
    ("bogus Swing X\n", "unknown entry kind"),
    ("listener Swing java.awt.event.ActionListener actionPerformed:ActionEvent\n", "duplicate listener"),
    ("listener Custom a.B handle\n", "method:EventType"),
    ("register Custom addX Missing\n", "unknown Custom listener"),
    ("widget Custom a.W addNothing\n", "unknown registration"),
])
def test_malformed_extensions_are_rejected(tmp_path, text, message):
    ext = tmp_path / "bad.txt"
    ext.write_text(text)
    with pytest.raises(CatalogError, match=message):
        load_catalog(ext)


def test_missing_extension_file(tmp_path):
    with pytest.raises(CatalogError, match="cannot read"):
        load_catalog(tmp_path / "absent.txt")


def test_environment_variable_extends_default(tmp_path, monkeypatch):
    ext = tmp_path / "ext.txt"
    ext.write_text("listener Custom com.acme.PingListener ping:PingEvent\n")
    monkeypatch.setenv(CATALOG_ENV, str(ext))
    monkeypatch.setattr(catalog_mod, "_DEFAULT", None)
    try:
        assert catalog_mod.default_catalog().is_listener_type("PingListener") is not None
    finally:
        catalog_mod._DEFAULT = None
