import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;

class PagedView {
  private int pageSize = 20;
  private PageView view;

  private void registerInteractiveObjectHandlers() {
   view.resetPageButton().addActionListener(
     new ActionListener() {
       @Override
       public void actionPerformed(ActionEvent e) {
         requestData(pageSize, null);
       }
     });
   view.previousPageButton().addActionListener(
     new ActionListener() {
       @Override
       public void actionPerformed(ActionEvent e) {
         if(hasPreviousBookmark())
           requestData(pageSize, getPreviousBookmark());
       }
     });
  }

  private boolean hasPreviousBookmark() { return true; }
  private Object getPreviousBookmark() { return null; }
  private void requestData(int size, Object mark) { }
}
