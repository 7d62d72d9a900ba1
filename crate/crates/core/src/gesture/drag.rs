//! Drag latch: follows the left-button edges produced by clicks, while the
//! right hand keeps localizing the pointer.

use crate::pointer::ButtonEdge;
use crate::types::{GestureEvent, GestureKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DragDetector {
    dragging: bool,
}

impl DragDetector {
    pub fn is_dragging(&self) -> bool {
        self.dragging
    }

    pub fn step(&mut self, edge: Option<ButtonEdge>, t: u64) -> Option<GestureEvent> {
        match (edge?, self.dragging) {
            (ButtonEdge::Down, false) => {
                self.dragging = true;
                Some(GestureEvent::new(t, GestureKind::DragStart))
            }
            (ButtonEdge::Up, true) => {
                self.dragging = false;
                Some(GestureEvent::new(t, GestureKind::DragEnd))
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_map_to_single_events() {
        let mut d = DragDetector::default();
        assert_eq!(d.step(Some(ButtonEdge::Down), 5), Some(GestureEvent::new(5, GestureKind::DragStart)));
        let held: Vec<_> = (6..106).filter_map(|t| d.step(None, t)).collect();
        assert!(held.is_empty());
        assert!(d.is_dragging());
        assert_eq!(d.step(Some(ButtonEdge::Down), 107), None);
        assert_eq!(d.step(Some(ButtonEdge::Up), 200), Some(GestureEvent::new(200, GestureKind::DragEnd)));
        assert_eq!(d.step(Some(ButtonEdge::Up), 201), None);
    }
}
