//! Edge-list and DIMACS text formats.
//!
//! Edge list: first non-comment line is `n`, then one `u v` pair per line,
//! 0-based; `#` starts a comment. DIMACS: `c` comments, a `p edge n m`
//! header, then `e u v` lines with 1-based vertices. Self-loops and repeated
//! edges are dropped and counted in [`ReadStats`].

use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dimacs,
}

impl GraphFormat {
    /// `.col`, `.clq` and `.dimacs` are DIMACS; anything else is an edge list.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("col" | "clq" | "dimacs") => GraphFormat::Dimacs,
            _ => GraphFormat::EdgeList,
        }
    }
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge-list" | "edgelist" | "el" => Ok(GraphFormat::EdgeList),
            "dimacs" | "col" => Ok(GraphFormat::Dimacs),
            other => Err(Error::Domain(format!("unknown graph format `{other}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReadStats {
    pub self_loops: usize,
    pub duplicates: usize,
}

impl ReadStats {
    pub fn warnings(&self) -> usize {
        self.self_loops + self.duplicates
    }
}

pub fn read_graph<R: BufRead>(reader: R, format: GraphFormat) -> Result<(Graph, ReadStats)> {
    match format {
        GraphFormat::EdgeList => read_edge_list(reader),
        GraphFormat::Dimacs => read_dimacs(reader),
    }
}

/// Reads a graph file, choosing the format from the extension unless given.
pub fn read_graph_file(path: &Path, format: Option<GraphFormat>) -> Result<(Graph, ReadStats)> {
    let file = std::fs::File::open(path)?;
    read_graph(
        std::io::BufReader::new(file),
        format.unwrap_or_else(|| GraphFormat::from_path(path)),
    )
}

pub fn write_graph_file(g: &Graph, path: &Path, format: Option<GraphFormat>) -> Result<()> {
    let file = std::fs::File::create(path)?;
    let mut out = std::io::BufWriter::new(file);
    write_graph(g, format.unwrap_or_else(|| GraphFormat::from_path(path)), &mut out)?;
    out.flush()?;
    Ok(())
}

pub fn write_graph<W: Write>(g: &Graph, format: GraphFormat, mut out: W) -> Result<()> {
    match format {
        GraphFormat::EdgeList => {
            writeln!(out, "{}", g.n())?;
            for (u, v) in g.edges() {
                writeln!(out, "{u} {v}")?;
            }
        }
        GraphFormat::Dimacs => {
            writeln!(out, "p edge {} {}", g.n(), g.edge_count())?;
            for (u, v) in g.edges() {
                writeln!(out, "e {} {}", u + 1, v + 1)?;
            }
        }
    }
    Ok(())
}

pub fn graph_to_string(g: &Graph, format: GraphFormat) -> String {
    let mut buf = Vec::new();
    write_graph(g, format, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

fn parse_num(tok: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("bad {what} `{tok}`"),
    })
}

fn add(g: &mut Graph, stats: &mut ReadStats, u: usize, v: usize, line: usize) -> Result<()> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {x} out of range for n={}", g.n()),
            });
        }
    }
    if u == v {
        stats.self_loops += 1;
    } else if !g.add_edge(u, v) {
        stats.duplicates += 1;
    }
    Ok(())
}

fn read_edge_list<R: BufRead>(reader: R) -> Result<(Graph, ReadStats)> {
    let mut g: Option<Graph> = None;
    let mut stats = ReadStats::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        match g.as_mut() {
            None => {
                let n = parse_num(toks.next(), lineno, "vertex count")?;
                if toks.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "header must contain only the vertex count".into(),
                    });
                }
                g = Some(Graph::new(n));
            }
            Some(g) => {
                let u = parse_num(toks.next(), lineno, "vertex")?;
                let v = parse_num(toks.next(), lineno, "vertex")?;
                if toks.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "expected exactly two vertices".into(),
                    });
                }
                add(g, &mut stats, u, v, lineno)?;
            }
        }
    }
    let g = g.ok_or(Error::Parse {
        line: 0,
        msg: "missing vertex count".into(),
    })?;
    Ok((g, stats))
}

fn read_dimacs<R: BufRead>(reader: R) -> Result<(Graph, ReadStats)> {
    let mut g: Option<Graph> = None;
    let mut stats = ReadStats::default();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if g.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate `p` header".into(),
                    });
                }
                match toks.next() {
                    Some("edge" | "col") => {}
                    other => {
                        return Err(Error::Parse {
                            line: lineno,
                            msg: format!("unsupported problem type {other:?}"),
                        })
                    }
                }
                let n = parse_num(toks.next(), lineno, "vertex count")?;
                parse_num(toks.next(), lineno, "edge count")?;
                g = Some(Graph::new(n));
            }
            Some("e") => {
                let g = g.as_mut().ok_or(Error::Parse {
                    line: lineno,
                    msg: "`e` line before `p` header".into(),
                })?;
                let u = parse_num(toks.next(), lineno, "vertex")?;
                let v = parse_num(toks.next(), lineno, "vertex")?;
                if u == 0 || v == 0 {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "DIMACS vertices are 1-based".into(),
                    });
                }
                add(g, &mut stats, u - 1, v - 1, lineno)?;
            }
            Some(tag) => {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("unknown line type `{tag}`"),
                })
            }
        }
    }
    let g = g.ok_or(Error::Parse {
        line: 0,
        msg: "missing `p edge` header".into(),
    })?;
    Ok((g, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_gnp;
    use crate::rng::RngHandle;

    fn read_str(s: &str, f: GraphFormat) -> Result<(Graph, ReadStats)> {
        read_graph(s.as_bytes(), f)
    }

    #[test]
    fn edge_list_path() {
        let (g, stats) = read_str("3\n0 1\n1 2\n", GraphFormat::EdgeList).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(stats.warnings(), 0);
    }

    #[test]
    fn dimacs_path_is_one_based() {
        let (g, _) = read_str("c hi\np edge 3 2\ne 1 2\ne 2 3\n", GraphFormat::Dimacs).unwrap();
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn comments_self_loops_and_duplicates() {
        let src = "# header\n4 # four\n0 1\n1 0\n2 2\n\n1 3 # tail\n";
        let (g, stats) = read_str(src, GraphFormat::EdgeList).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(
            stats,
            ReadStats {
                self_loops: 1,
                duplicates: 1
            }
        );
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(
            read_str("3\n0 3\n", GraphFormat::EdgeList),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(read_str("3\n0 x\n", GraphFormat::EdgeList).is_err());
        assert!(read_str("3\n0 1 2\n", GraphFormat::EdgeList).is_err());
        assert!(read_str("", GraphFormat::EdgeList).is_err());
        assert!(read_str("e 1 2\n", GraphFormat::Dimacs).is_err());
        assert!(read_str("p edge 2 1\ne 0 1\n", GraphFormat::Dimacs).is_err());
        assert!(read_str("p edge 2 1\nq 1 2\n", GraphFormat::Dimacs).is_err());
    }

    #[test]
    fn round_trip_both_formats() {
        let g = gen_gnp(50, 0.5, &mut RngHandle::new(1)).unwrap();
        for f in [GraphFormat::EdgeList, GraphFormat::Dimacs] {
            let text = graph_to_string(&g, f);
            let (back, _) = read_str(&text, f).unwrap();
            assert_eq!(back, g);
            assert_eq!(graph_to_string(&back, f), text);
        }
    }
}
