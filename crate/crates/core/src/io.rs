//! File formats: DIMACS graphs, Newick layouts, cotrees, interval files,
//! permutation files, and order files.
//!
//! All parsers are strict: malformed or ambiguous input is a parse error,
//! never a silent repair.

use crate::builders::{Cotree, Interval};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{LayoutNode, LayoutTree, RootedLayout};

/// Parse a DIMACS graph file.
///
/// Accepted lines: `c ...` comments, one `p edge <n> <m>` header, `e <u> <v>`
/// edges with 1-based distinct endpoints, and optional `n <u> <name>` label
/// lines. Self-loops, duplicate edges, duplicate labels, unknown directives,
/// and an edge count that disagrees with the header are all parse errors.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    let mut declared_m = 0usize;
    let mut seen_m = 0usize;
    let mut labels: Vec<Option<String>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut tok = line.split_whitespace();
        let head = tok.next().unwrap();
        match head {
            "p" => {
                if graph.is_some() {
                    return Err(Error::parse(format!("line {}: duplicate p line", lineno + 1)));
                }
                let kind = tok.next().ok_or_else(|| {
                    Error::parse(format!("line {}: p line missing format", lineno + 1))
                })?;
                if kind != "edge" {
                    return Err(Error::parse(format!(
                        "line {}: unsupported format {:?}, expected \"edge\"",
                        lineno + 1,
                        kind
                    )));
                }
                let n: usize = next_uint(&mut tok, lineno, "vertex count")?;
                declared_m = next_uint(&mut tok, lineno, "edge count")?;
                if tok.next().is_some() {
                    return Err(Error::parse(format!(
                        "line {}: trailing tokens on p line",
                        lineno + 1
                    )));
                }
                labels = vec![None; n];
                graph = Some(Graph::new(n));
            }
            "e" => {
                let g = graph.as_mut().ok_or_else(|| {
                    Error::parse(format!("line {}: e line before p line", lineno + 1))
                })?;
                let u: usize = next_uint(&mut tok, lineno, "edge endpoint")?;
                let v: usize = next_uint(&mut tok, lineno, "edge endpoint")?;
                if tok.next().is_some() {
                    return Err(Error::parse(format!(
                        "line {}: trailing tokens on e line",
                        lineno + 1
                    )));
                }
                let (u, v) = one_based_pair(u, v, g.n(), lineno)?;
                if g.has_edge(u, v) {
                    return Err(Error::parse(format!(
                        "line {}: duplicate edge {} {}",
                        lineno + 1,
                        u + 1,
                        v + 1
                    )));
                }
                g.add_edge(u, v)
                    .map_err(|e| Error::parse(format!("line {}: {}", lineno + 1, e)))?;
                seen_m += 1;
            }
            "n" => {
                let g = graph.as_ref().ok_or_else(|| {
                    Error::parse(format!("line {}: n line before p line", lineno + 1))
                })?;
                let u: usize = next_uint(&mut tok, lineno, "vertex")?;
                let name = tok.next().ok_or_else(|| {
                    Error::parse(format!("line {}: n line missing name", lineno + 1))
                })?;
                if tok.next().is_some() {
                    return Err(Error::parse(format!(
                        "line {}: trailing tokens on n line",
                        lineno + 1
                    )));
                }
                if u == 0 || u > g.n() {
                    return Err(Error::parse(format!(
                        "line {}: vertex {} out of range 1..={}",
                        lineno + 1,
                        u,
                        g.n()
                    )));
                }
                if labels[u - 1].is_some() {
                    return Err(Error::parse(format!(
                        "line {}: duplicate label for vertex {}",
                        lineno + 1,
                        u
                    )));
                }
                labels[u - 1] = Some(name.to_string());
            }
            other => {
                return Err(Error::parse(format!(
                    "line {}: unknown directive {:?}",
                    lineno + 1,
                    other
                )));
            }
        }
    }

    let mut g = graph.ok_or_else(|| Error::parse("missing p line"))?;
    if seen_m != declared_m {
        return Err(Error::parse(format!(
            "p line declares {} edges but {} e lines found",
            declared_m, seen_m
        )));
    }
    if labels.iter().any(|l| l.is_some()) {
        let filled: Vec<String> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| l.clone().unwrap_or_else(|| (i + 1).to_string()))
            .collect();
        let mut sorted = filled.clone();
        sorted.sort();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                return Err(Error::parse(format!("duplicate vertex label {:?}", w[0])));
            }
        }
        g.set_labels(filled)?;
    }
    Ok(g)
}

fn next_uint(tok: &mut std::str::SplitWhitespace<'_>, lineno: usize, what: &str) -> Result<usize> {
    let t = tok
        .next()
        .ok_or_else(|| Error::parse(format!("line {}: missing {}", lineno + 1, what)))?;
    t.parse::<usize>()
        .map_err(|_| Error::parse(format!("line {}: bad {} {:?}", lineno + 1, what, t)))
}

fn one_based_pair(u: usize, v: usize, n: usize, lineno: usize) -> Result<(u32, u32)> {
    for &x in &[u, v] {
        if x == 0 || x > n {
            return Err(Error::parse(format!(
                "line {}: vertex {} out of range 1..={}",
                lineno + 1,
                x,
                n
            )));
        }
    }
    if u == v {
        return Err(Error::parse(format!("line {}: self-loop at {}", lineno + 1, u)));
    }
    Ok(((u - 1) as u32, (v - 1) as u32))
}

/// Serialize a graph in DIMACS form. Edges are written with ascending
/// 1-based endpoints; label lines are emitted only when labels are assigned.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    if let Some(ls) = g.labels() {
        for (i, l) in ls.iter().enumerate() {
            out.push_str(&format!("n {} {}\n", i + 1, l));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Resolve a leaf token against a graph: assigned labels take priority,
/// otherwise the token is read as a 1-based vertex index.
pub(crate) fn resolve_vertex(g: &Graph, token: &str) -> Result<u32> {
    if let Some(v) = g.vertex_by_label(token) {
        return Ok(v);
    }
    if let Ok(i) = token.parse::<usize>() {
        if i >= 1 && i <= g.n() {
            return Ok((i - 1) as u32);
        }
    }
    Err(Error::parse(format!("unknown vertex {:?}", token)))
}

struct Scanner<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(text: &'a str) -> Self {
        Scanner { bytes: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.bump() {
            Some(got) if got == c => Ok(()),
            Some(got) => Err(Error::parse(format!(
                "expected {:?}, found {:?}",
                c as char, got as char
            ))),
            None => Err(Error::parse(format!("expected {:?}, found end of input", c as char))),
        }
    }

    /// Read a name token: any run of characters outside `(),;` and whitespace.
    fn name(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let b = self.bytes[self.pos];
            if b.is_ascii_whitespace() || matches!(b, b'(' | b')' | b',' | b';') {
                break;
            }
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::parse("expected a name"));
        }
        Ok(std::str::from_utf8(&self.bytes[start..self.pos]).unwrap())
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek() == Some(b';') {
            self.pos += 1;
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(Error::parse("trailing input after tree"));
        }
        Ok(())
    }
}

/// Parse a Newick layout tree such as `((a,b),(c,d));` against a graph.
///
/// Leaves are vertex labels when the graph has them, otherwise 1-based
/// indices. Layout trees are binary; an internal node with any other arity
/// is a parse error, as is a repeated or missing leaf (checked by
/// [`RootedLayout::from_tree`] and the totality requirements downstream).
pub fn parse_newick_layout(text: &str, g: &Graph) -> Result<RootedLayout> {
    let mut sc = Scanner::new(text);
    let tree = parse_layout_node(&mut sc, g)?;
    sc.finish()?;
    RootedLayout::from_tree(&tree, g.n())
}

fn parse_layout_node(sc: &mut Scanner<'_>, g: &Graph) -> Result<LayoutTree> {
    if sc.peek() == Some(b'(') {
        sc.expect(b'(')?;
        let left = parse_layout_node(sc, g)?;
        sc.expect(b',')?;
        let right = parse_layout_node(sc, g)?;
        if sc.peek() == Some(b',') {
            return Err(Error::parse("layout trees must be binary"));
        }
        sc.expect(b')')?;
        Ok(LayoutTree::node(left, right))
    } else {
        let name = sc.name()?;
        Ok(LayoutTree::Leaf(resolve_vertex(g, name)?))
    }
}

/// Serialize a layout as a Newick tree using the graph's vertex labels.
pub fn write_newick_layout(layout: &RootedLayout, g: &Graph) -> String {
    let mut out = String::new();
    write_layout_node(layout, layout.root(), g, &mut out);
    out.push(';');
    out
}

fn write_layout_node(layout: &RootedLayout, id: usize, g: &Graph, out: &mut String) {
    match layout.node(id) {
        LayoutNode::Leaf(v) => out.push_str(&g.label(v)),
        LayoutNode::Internal { left, right } => {
            out.push('(');
            write_layout_node(layout, left, g, out);
            out.push(',');
            write_layout_node(layout, right, g, out);
            out.push(')');
        }
    }
}

/// Parse a cotree. Two spellings are accepted and may be mixed: the prefix
/// form `J(U(a,b),c)` and the Newick form with internal labels `((a,b)U,c)J`.
/// `U` and `J` are reserved words and cannot name leaves. Internal nodes may
/// have two or more children; leaf names are assigned vertex indices in order
/// of first appearance, returned alongside the tree.
pub fn parse_cotree(text: &str) -> Result<(Cotree, Vec<String>)> {
    let mut sc = Scanner::new(text);
    let mut names: Vec<String> = Vec::new();
    let tree = parse_cotree_node(&mut sc, &mut names)?;
    sc.finish()?;
    Ok((tree, names))
}

fn parse_cotree_node(sc: &mut Scanner<'_>, names: &mut Vec<String>) -> Result<Cotree> {
    if sc.peek() == Some(b'(') {
        let children = parse_cotree_children(sc, names)?;
        let label = sc.name().map_err(|_| {
            Error::parse("internal cotree node needs a U or J label after the parenthesis")
        })?;
        cotree_internal(label, children)
    } else {
        let name = sc.name()?;
        if name == "U" || name == "J" {
            if sc.peek() == Some(b'(') {
                let children = parse_cotree_children(sc, names)?;
                return cotree_internal(name, children);
            }
            return Err(Error::parse(format!("{:?} is reserved and cannot name a leaf", name)));
        }
        if names.iter().any(|n| n == name) {
            return Err(Error::parse(format!("leaf {:?} appears twice", name)));
        }
        names.push(name.to_string());
        Ok(Cotree::Leaf((names.len() - 1) as u32))
    }
}

fn parse_cotree_children(sc: &mut Scanner<'_>, names: &mut Vec<String>) -> Result<Vec<Cotree>> {
    sc.expect(b'(')?;
    let mut children = vec![parse_cotree_node(sc, names)?];
    while sc.peek() == Some(b',') {
        sc.expect(b',')?;
        children.push(parse_cotree_node(sc, names)?);
    }
    sc.expect(b')')?;
    Ok(children)
}

fn cotree_internal(label: &str, children: Vec<Cotree>) -> Result<Cotree> {
    if children.len() < 2 {
        return Err(Error::parse(format!(
            "cotree {} node needs at least two children, found {}",
            label,
            children.len()
        )));
    }
    match label {
        "U" => Ok(Cotree::Union(children)),
        "J" => Ok(Cotree::Join(children)),
        other => Err(Error::parse(format!(
            "internal cotree label must be U or J, found {:?}",
            other
        ))),
    }
}

/// Parse an interval file: one `<vertex> <left> <right>` triple per line,
/// `#`-prefixed comment lines and blank lines skipped. When every vertex
/// token is a distinct integer in 1..=n they are taken as 1-based indices
/// (so line order does not matter); otherwise lines are numbered in order
/// and tokens become labels. Returns the intervals indexed by vertex and the
/// label per vertex.
pub fn parse_interval_file(text: &str) -> Result<(Vec<Interval>, Vec<String>)> {
    let mut rows: Vec<(String, Interval)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 3 {
            return Err(Error::parse(format!(
                "line {}: expected `<vertex> <left> <right>`",
                lineno + 1
            )));
        }
        let left: f64 = toks[1]
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad left endpoint", lineno + 1)))?;
        let right: f64 = toks[2]
            .parse()
            .map_err(|_| Error::parse(format!("line {}: bad right endpoint", lineno + 1)))?;
        rows.push((toks[0].to_string(), Interval::new(left, right)?));
    }
    if rows.is_empty() {
        return Err(Error::parse("interval file has no intervals"));
    }
    let n = rows.len();
    for i in 0..n {
        for j in (i + 1)..n {
            if rows[i].0 == rows[j].0 {
                return Err(Error::parse(format!("duplicate vertex {:?}", rows[i].0)));
            }
        }
    }
    let indices: Option<Vec<usize>> = rows
        .iter()
        .map(|(name, _)| match name.parse::<usize>() {
            Ok(i) if i >= 1 && i <= n => Some(i - 1),
            _ => None,
        })
        .collect();
    let mut intervals = vec![Interval::new(0.0, 0.0)?; n];
    let mut labels = vec![String::new(); n];
    match indices {
        Some(idx) => {
            for ((name, iv), i) in rows.into_iter().zip(idx) {
                intervals[i] = iv;
                labels[i] = name;
            }
        }
        None => {
            for (i, (name, iv)) in rows.into_iter().enumerate() {
                intervals[i] = iv;
                labels[i] = name;
            }
        }
    }
    Ok((intervals, labels))
}

/// Parse a permutation file: whitespace-separated 1-based images forming a
/// permutation of 1..=n. Returns 0-based images.
pub fn parse_permutation_file(text: &str) -> Result<Vec<u32>> {
    parse_one_based_permutation(text, "permutation")
}

/// Parse an order file: whitespace-separated 1-based vertex indices forming
/// a permutation of 1..=n. Returns 0-based vertices in file order.
pub fn parse_order_file(text: &str) -> Result<Vec<u32>> {
    parse_one_based_permutation(text, "order")
}

fn parse_one_based_permutation(text: &str, what: &str) -> Result<Vec<u32>> {
    let mut vals = Vec::new();
    for tok in text.split_whitespace() {
        let v: usize = tok
            .parse()
            .map_err(|_| Error::parse(format!("bad {} entry {:?}", what, tok)))?;
        vals.push(v);
    }
    if vals.is_empty() {
        return Err(Error::parse(format!("empty {} file", what)));
    }
    let n = vals.len();
    let mut seen = vec![false; n];
    for &v in &vals {
        if v == 0 || v > n {
            return Err(Error::parse(format!("{} entry {} out of range 1..={}", what, v, n)));
        }
        if seen[v - 1] {
            return Err(Error::parse(format!("{} entry {} repeated", what, v)));
        }
        seen[v - 1] = true;
    }
    Ok(vals.into_iter().map(|v| (v - 1) as u32).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::cotree_graph;

    #[test]
    fn dimacs_round_trip_with_labels() {
        let text = "c a path\np edge 3 2\nn 1 a\nn 2 b\nn 3 d\ne 1 2\ne 2 3\n";
        let g = parse_dimacs(text).unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.m(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 2) && !g.has_edge(0, 2));
        assert_eq!(g.label(2), "d");
        let again = parse_dimacs(&write_dimacs(&g)).unwrap();
        assert_eq!(again.edges(), g.edges());
        assert_eq!(again.label(0), "a");
    }

    #[test]
    fn dimacs_rejects_malformed_input() {
        assert!(parse_dimacs("p edge 2 1\ne 1 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 0\ne 1 2\n").is_err());
        assert!(parse_dimacs("e 1 2\np edge 2 1\n").is_err());
        assert!(parse_dimacs("p edge 2 1\nx 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("p edge 2 0\nn 1 x\nn 2 x\n").is_err());
        assert!(parse_dimacs("").is_err());
    }

    #[test]
    fn newick_layout_round_trip() {
        let g = parse_dimacs("p edge 4 3\nn 1 a\nn 2 b\nn 3 c\nn 4 d\ne 1 2\ne 2 3\ne 3 4\n")
            .unwrap();
        let layout = parse_newick_layout("((a,b),(c,d));", &g).unwrap();
        assert_eq!(layout.node_count(), 7);
        let text = write_newick_layout(&layout, &g);
        assert_eq!(text, "((a,b),(c,d));");
        let again = parse_newick_layout(&text, &g).unwrap();
        assert_eq!(again.set(again.root()).to_vec(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn newick_layout_numeric_leaves() {
        let g = parse_dimacs("p edge 3 2\ne 1 2\ne 2 3\n").unwrap();
        let layout = parse_newick_layout("((1,2),3);", &g).unwrap();
        assert_eq!(layout.set(layout.root()).len(), 3);
    }

    #[test]
    fn newick_layout_rejects_nonbinary_and_unknown() {
        let g = parse_dimacs("p edge 3 0\n").unwrap();
        assert!(parse_newick_layout("(1,2,3);", &g).is_err());
        assert!(parse_newick_layout("((1,2),4);", &g).is_err());
        assert!(parse_newick_layout("((1,2),3));", &g).is_err());
    }

    #[test]
    fn cotree_prefix_and_postfix_agree() {
        let (t1, names1) = parse_cotree("J(U(a,b),c)").unwrap();
        let (t2, names2) = parse_cotree("((a,b)U,c)J;").unwrap();
        assert_eq!(names1, names2);
        let g1 = cotree_graph(&t1).unwrap();
        let g2 = cotree_graph(&t2).unwrap();
        assert_eq!(g1.edges(), g2.edges());
        // join of {a,b} union {c}: edges a-c and b-c only.
        assert_eq!(g1.edges(), vec![(0, 2), (1, 2)]);
    }

    #[test]
    fn cotree_rejects_bad_forms() {
        assert!(parse_cotree("U(a)").is_err());
        assert!(parse_cotree("(a,b)X").is_err());
        assert!(parse_cotree("(a,b)").is_err());
        assert!(parse_cotree("J(a,a)").is_err());
        assert!(parse_cotree("U").is_err());
    }

    #[test]
    fn interval_file_indexed_and_labeled() {
        let (ivs, labels) = parse_interval_file("2 0 1\n1 0.5 2\n").unwrap();
        assert_eq!(labels, vec!["1", "2"]);
        assert!((ivs[0].left - 0.5).abs() < 1e-12);
        let (ivs2, labels2) = parse_interval_file("# c\nx 0 1\ny 2 3\n").unwrap();
        assert_eq!(labels2, vec!["x", "y"]);
        assert!((ivs2[1].left - 2.0).abs() < 1e-12);
        assert!(parse_interval_file("x 0 1\nx 1 2\n").is_err());
        assert!(parse_interval_file("x 0\n").is_err());
        assert!(parse_interval_file("x 2 1\n").is_err());
    }

    #[test]
    fn permutation_and_order_files() {
        assert_eq!(parse_permutation_file("3 1 2").unwrap(), vec![2, 0, 1]);
        assert!(parse_permutation_file("1 1").is_err());
        assert!(parse_permutation_file("0 1").is_err());
        assert!(parse_permutation_file("").is_err());
        assert_eq!(parse_order_file("2 3 1\n").unwrap(), vec![1, 2, 0]);
    }
}
