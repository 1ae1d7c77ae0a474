"""Find a Blob listener in a small Swing class and look at its commands.

A single ``actionPerformed`` serves three buttons. It tells them apart by
comparing ``e.getSource()`` against each field. That makes three commands
behind one listener, which crosses the default threshold of three.

Run with ``python demos/01_detect.py``.
"""
from blobsmell import Project, analyze

SOURCE = """\
import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JButton;
import javax.swing.JPanel;

public class Toolbar extends JPanel implements ActionListener {
    private final JButton open = new JButton("Open");
    private final JButton save = new JButton("Save");
    private final JButton quit = new JButton("Quit");

    public Toolbar() {
        open.addActionListener(this);
        save.addActionListener(this);
        quit.addActionListener(this);
    }

    @Override
    public void actionPerformed(ActionEvent e) {
        Object src = e.getSource();
        if (src == open) {
            openDocument();
        } else if (src == save) {
            saveDocument();
        } else if (src == quit) {
            System.exit(0);
        }
    }

    void openDocument() {}
    void saveDocument() {}
}
"""

project = Project.from_corpus({"Toolbar.java": SOURCE})
_, results = analyze(project)

for diag, _ in results:
    lst = diag.listener
    print(f"{lst.file.path}:{lst.line}  {lst.spec.simple_name}  kind={lst.kind.value}")
    print(f"  commands: {diag.cmd}  blob: {diag.is_blob}  type: {diag.blob_type.value}")
    for cmd in diag.commands:
        ident = cmd.identification
        print(f"  - line {cmd.line}: {ident.variant.value}, main statements: {len(cmd.main)}")

# The same listener with a stricter threshold stops being reported.
_, strict = analyze(project, threshold=4)
print("blob at threshold 4:", [d.is_blob for d, _ in strict])
