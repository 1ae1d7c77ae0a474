import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;
import javax.swing.AbstractButton;
import javax.swing.JButton;
import javax.swing.JMenuItem;

class AController implements ActionListener {
  JButton b1;
  JButton b2;
  JMenuItem m3;

  AController() {
    b1 = new JButton("one");
    b2 = new JButton("two");
    m3 = new JMenuItem("three");
    m3.setActionCommand("three");
    b1.addActionListener(this);
    b2.addActionListener(this);
    m3.addActionListener(this);
  }

  @Override
  public void actionPerformed(ActionEvent e) {
     Object src = e.getSource();
     if(src==b1){
        System.out.println("command 1");
     }else if(src==b2){
        System.out.println("command 2");
     }else if(src instanceof AbstractButton &&
         ((AbstractButton)src).getActionCommand().equals(
         m3.getActionCommand())){
        System.out.println("command 3");
     }
  }
}
