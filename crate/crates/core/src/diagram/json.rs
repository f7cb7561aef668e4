//! JSON form of a diagram. Keys are emitted in a fixed order and arrays are
//! sorted by id, so serialization is byte-stable.

use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, DiagramError, Dir, Outer, Side, Sign, Slot, Vertex};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiagram {
    #[serde(default)]
    name: String,
    #[serde(default)]
    crossings: Vec<RawCrossing>,
    #[serde(default)]
    vertices: Vec<RawVertex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outer: Option<RawOuter>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCrossing {
    id: String,
    sign: i64,
    under_in: String,
    under_out: String,
    over_in: String,
    over_out: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSlot {
    semi_arc: String,
    dir: Dir,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVertex {
    id: String,
    slots: [RawSlot; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOuter {
    semi_arc: String,
    side: Side,
}

pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    let raw: RawDiagram =
        serde_json::from_str(text).map_err(|e| DiagramError::Syntax(e.to_string()))?;
    let crossings = raw
        .crossings
        .into_iter()
        .map(|c| {
            let sign = Sign::from_int(c.sign)
                .ok_or_else(|| DiagramError::BadSign(c.id.clone(), c.sign))?;
            Ok(Crossing {
                id: c.id,
                sign,
                under_in: c.under_in,
                under_out: c.under_out,
                over_in: c.over_in,
                over_out: c.over_out,
            })
        })
        .collect::<Result<Vec<_>, DiagramError>>()?;
    let vertices = raw
        .vertices
        .into_iter()
        .map(|v| Vertex {
            id: v.id,
            slots: v.slots.map(|s| Slot::new(s.semi_arc, s.dir)),
        })
        .collect();
    let outer = raw.outer.map(|o| Outer {
        semi_arc: o.semi_arc,
        side: o.side,
    });
    Diagram::new(raw.name, crossings, vertices, outer)
}

pub fn serialize_diagram(d: &Diagram) -> String {
    let raw = RawDiagram {
        name: d.name().to_string(),
        crossings: d
            .crossings()
            .iter()
            .map(|c| RawCrossing {
                id: c.id.clone(),
                sign: c.sign.to_int(),
                under_in: c.under_in.clone(),
                under_out: c.under_out.clone(),
                over_in: c.over_in.clone(),
                over_out: c.over_out.clone(),
            })
            .collect(),
        vertices: d
            .vertices()
            .iter()
            .map(|v| RawVertex {
                id: v.id.clone(),
                slots: v.slots.clone().map(|s| RawSlot {
                    semi_arc: s.semi_arc,
                    dir: s.dir,
                }),
            })
            .collect(),
        outer: d.outer().map(|o| RawOuter {
            semi_arc: o.semi_arc.clone(),
            side: o.side,
        }),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("diagram serializes");
    text.push('\n');
    text
}
