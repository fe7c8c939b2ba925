//! SVG floor plans and Graphviz DOT graphs.

use std::fmt::Write as _;

use roomcraft_core::geometry::{facing, Vec2};
use roomcraft_core::graph::{NodeKind, SpatialGraph};
use roomcraft_core::placement::Layout;
use roomcraft_core::scene::{Mount, Wall};

pub const PX_PER_M: f64 = 100.0;
const MARGIN: f64 = 40.0;

struct Frame {
    depth: f64,
}

impl Frame {
    fn x(&self, x: f64) -> f64 {
        MARGIN + x * PX_PER_M
    }

    /// SVG's y grows downward, so north ends up at the top.
    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.depth - y) * PX_PER_M
    }

    fn pt(&self, p: Vec2) -> String {
        format!("{:.1},{:.1}", self.x(p.x), self.y(p.y))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// Endpoints of an opening of `width` at `offset` along `wall`.
fn opening(wall: Wall, offset: f64, width: f64, w: f64, d: f64) -> (Vec2, Vec2) {
    match wall {
        Wall::South => (Vec2::new(offset, 0.0), Vec2::new(offset + width, 0.0)),
        Wall::North => (Vec2::new(offset, d), Vec2::new(offset + width, d)),
        Wall::West => (Vec2::new(0.0, offset), Vec2::new(0.0, offset + width)),
        Wall::East => (Vec2::new(w, offset), Vec2::new(w, offset + width)),
    }
}

fn fill_for(mount: Mount) -> &'static str {
    match mount {
        Mount::Floor => "#d9e4f0",
        Mount::Wall => "#f0e2c8",
        Mount::Ceiling => "#e6d9f0",
        Mount::OnTop => "#d8efd9",
    }
}

pub fn layout_svg(layout: &Layout) -> String {
    let room = &layout.room;
    let f = Frame { depth: room.depth };
    let total_w = room.width * PX_PER_M + 2.0 * MARGIN;
    let total_h = room.depth * PX_PER_M + 2.0 * MARGIN;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w:.0}" height="{total_h:.0}" viewBox="0 0 {total_w:.0} {total_h:.0}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect class="room" x="{:.1}" y="{:.1}" width="{:.1}" height="{:.1}" fill="none" stroke="black" stroke-width="4"/>"#,
        f.x(0.0),
        f.y(room.depth),
        room.width * PX_PER_M,
        room.depth * PX_PER_M
    );
    for door in &room.doors {
        let (a, b) = opening(door.wall, door.offset, door.width, room.width, room.depth);
        let _ = writeln!(
            s,
            r#"<line class="door" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="white" stroke-width="6"/>"#,
            f.x(a.x),
            f.y(a.y),
            f.x(b.x),
            f.y(b.y)
        );
    }
    for win in &room.windows {
        let (a, b) = opening(win.wall, win.offset, win.width, room.width, room.depth);
        let _ = writeln!(
            s,
            r##"<line class="window" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#5aa0e0" stroke-width="6"/>"##,
            f.x(a.x),
            f.y(a.y),
            f.x(b.x),
            f.y(b.y)
        );
    }
    // Floor items first so surface and wall items draw on top.
    let mut items: Vec<_> = layout.items.iter().collect();
    items.sort_by(|a, b| a.z.total_cmp(&b.z).then_with(|| a.id.cmp(&b.id)));
    for it in items {
        let fp = it.footprint();
        let pts: Vec<String> = fp.corners().iter().map(|&c| f.pt(c)).collect();
        let _ = writeln!(
            s,
            r##"<g class="item" id="{}"><polygon points="{}" fill="{}" stroke="#333" stroke-width="1.5"/>"##,
            escape(&it.id),
            pts.join(" "),
            fill_for(it.mount)
        );
        let dir = facing(it.yaw);
        let tip = it.position + dir * (it.depth / 2.0);
        let _ = writeln!(
            s,
            r##"<line class="facing" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#c03030" stroke-width="2"/>"##,
            f.x(it.position.x),
            f.y(it.position.y),
            f.x(tip.x),
            f.y(tip.y)
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" font-family="sans-serif" font-size="11" text-anchor="middle">{}</text></g>"#,
            f.x(it.position.x),
            f.y(it.position.y) - 4.0,
            escape(&it.id)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn dot_id(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn graph_dot(graph: &SpatialGraph) -> String {
    let mut s = String::from("digraph scene {\n  rankdir=LR;\n");
    for node in graph.nodes() {
        let shape = match node.kind {
            NodeKind::Furniture => "box",
            NodeKind::Architectural => "ellipse",
        };
        let _ = writeln!(s, "  {} [shape={shape}];", dot_id(&node.id));
    }
    for e in graph.edges() {
        let nodes = graph.nodes();
        let _ = writeln!(
            s,
            "  {} -> {} [label=\"{} ({})\"];",
            dot_id(&nodes[e.subject].id),
            dot_id(&nodes[e.object].id),
            e.relation.as_str(),
            e.weight
        );
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use roomcraft_core::placement::PlacedItem;
    use roomcraft_core::scene::{build_room, RoomType};

    #[test]
    fn svg_maps_north_to_top() {
        let mut l = Layout::new(build_room(RoomType::Bedroom, Some((4.0, 3.0))).unwrap());
        l.items.push(PlacedItem {
            id: "bed<1>".into(),
            category: "bed".into(),
            position: Vec2::new(1.0, 2.0),
            z: 0.0,
            yaw: 0.0,
            width: 1.0,
            depth: 1.0,
            height: 0.5,
            color: None,
            material: None,
            mount: Mount::Floor,
            support: None,
        });
        let svg = layout_svg(&l);
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains(r#"width="480""#));
        // Corner (0.5, 1.5) → x 90, y 40 + 1.5 * 100 = 190.
        assert!(svg.contains("90.0,190.0"));
        assert!(svg.contains("bed&lt;1&gt;"));
        assert_eq!(svg.matches(r#"class="door""#).count(), 1);
    }
}
