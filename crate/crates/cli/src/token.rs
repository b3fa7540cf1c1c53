//! Forbidden-graph tokens: `path:t`, `cycle:t`, `star:t`, `matching:t`,
//! `clique:t`, or a graph6 string.
//!
//! `star:t` is the star on `t` vertices (`t - 1` leaves), so `star:4` is
//! `S_4`. `matching:t` has `t` edges on `2t` vertices.

use spexlab::graph6::graph6_decode;
use spexlab::Graph;

pub fn parse_graph(token: &str) -> Result<Graph, String> {
    let Some((kind, arg)) = token.split_once(':') else {
        return graph6_decode(token).map_err(|e| format!("'{token}' is neither a named family nor graph6: {e}"));
    };
    let t: usize = arg.parse().map_err(|_| format!("'{arg}' is not a nonnegative integer"))?;
    let g = match kind {
        "path" => Graph::path(t),
        "cycle" if t < 3 => return Err(format!("cycle:{t} needs at least 3 vertices")),
        "cycle" => Graph::cycle(t),
        "star" => Graph::star(t),
        "matching" => Graph::matching(t),
        "clique" => Graph::complete(t),
        other => return Err(format!("unknown family '{other}' (expected path, cycle, star, matching, clique)")),
    };
    g.map_err(|e| e.to_string())
}
