import java.awt.event.ActionEvent;
import java.awt.event.ActionListener;

class MapController implements ActionListener {
  private MapView view;
  private MapModel map;

  public void actionPerformed(ActionEvent event) {
     if(event.getSource() == view.moveDown) {
        map.move(0, 1);
     } else if(event.getSource() == view.moveLeft) {
        map.move(-1, 0);
     } else if(event.getSource() == view.moveRight) {
        map.move(1, 0);
     } else if(event.getSource() == view.moveUp) {
        map.move(0, -1);
     } else if(event.getSource() == view.zoomIn) {
        map.zoom(2);
     } else if(event.getSource() == view.zoomOut) {
        map.zoom(-2);
     }}
}
