import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.JFileChooser;

class FileController implements ActionListener {
	static final String ACTION_CMD = "actionCmd";
	static final String OTHER_CMD = "otherCmd";
	JFileChooser c;
	public FileController() {
		c = new JFileChooser();
		c.setMultiSelectionEnabled(false);
	}

   public void actionPerformed(ActionEvent e) {
      if(ACTION_CMD.equals(e.getActionCommand())) {
         c.showDialog(null, "title");
	   } else if(OTHER_CMD.equals(e.getActionCommand())) {
         c.cancelSelection();
      }
   }
}
