//! DIMACS ASCII clique format: `c` comments, one `p edge <n> <m>` line, then
//! `e <u> <v>` lines with 1-based endpoints.

use std::io::{BufRead, Write};

use log::warn;

use crate::error::GraphError;
use crate::graph::Graph;

#[derive(Clone, Debug)]
pub struct ParsedDimacs {
    pub graph: Graph,
    /// Edge count from the `p` line. Advisory only; often wrong in the wild.
    pub declared_edges: usize,
    pub warnings: Vec<String>,
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("malformed {what} `{tok}`"),
    })
}

pub fn parse_dimacs<R: BufRead>(reader: R) -> Result<ParsedDimacs, GraphError> {
    let mut header: Option<(usize, usize)> = None;
    let mut lists: Vec<Vec<usize>> = Vec::new();
    let mut edge_lines = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let mut toks = line.split_ascii_whitespace();
        let Some(tag) = toks.next() else { continue };
        match tag {
            "c" => {}
            "p" => {
                if header.is_some() {
                    return Err(GraphError::Parse {
                        line: line_no,
                        msg: "duplicate problem line".into(),
                    });
                }
                // "edge" in the clique benchmarks, "col" in the coloring ones.
                let _format: String = parse_field(toks.next(), line_no, "problem format")?;
                let n: usize = parse_field(toks.next(), line_no, "vertex count")?;
                let m: usize = parse_field(toks.next(), line_no, "edge count")?;
                lists = vec![Vec::new(); n];
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or(GraphError::MissingProblemLine)?;
                let u: usize = parse_field(toks.next(), line_no, "endpoint")?;
                let v: usize = parse_field(toks.next(), line_no, "endpoint")?;
                for w in [u, v] {
                    if w == 0 || w > n {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("endpoint {w} outside [1, {n}]"),
                        });
                    }
                }
                edge_lines += 1;
                if u != v {
                    lists[u - 1].push(v - 1);
                    lists[v - 1].push(u - 1);
                }
            }
            other => {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("unknown line type `{other}`"),
                })
            }
        }
    }

    let (_, declared_edges) = header.ok_or(GraphError::MissingProblemLine)?;
    let graph = Graph::from_neighbor_lists(lists);
    let mut warnings = Vec::new();
    if graph.edge_count() != declared_edges {
        let msg = format!(
            "header declares {declared_edges} edges, found {} distinct edges in {edge_lines} edge lines",
            graph.edge_count()
        );
        warn!("{msg}");
        warnings.push(msg);
    }
    Ok(ParsedDimacs {
        graph,
        declared_edges,
        warnings,
    })
}

pub fn parse_dimacs_str(text: &str) -> Result<Graph, GraphError> {
    parse_dimacs(text.as_bytes()).map(|p| p.graph)
}

pub fn write_dimacs<W: Write>(g: &Graph, mut w: W, comment: Option<&str>) -> std::io::Result<()> {
    if let Some(comment) = comment {
        for line in comment.lines() {
            writeln!(w, "c {line}")?;
        }
    }
    writeln!(w, "p edge {} {}", g.n(), g.edge_count())?;
    for (u, v) in g.edges() {
        writeln!(w, "e {} {}", u + 1, v + 1)?;
    }
    w.flush()
}

pub fn to_dimacs_string(g: &Graph) -> String {
    let mut buf = Vec::new();
    write_dimacs(g, &mut buf, None).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("DIMACS output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_triangle() {
        let g = parse_dimacs_str("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn skips_comments() {
        let g = parse_dimacs_str("c hi\np edge 2 1\ne 1 2\n").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn declared_count_is_advisory() {
        let parsed = parse_dimacs("p edge 3 7\ne 1 2\ne 2 1\n\ne 3 3\n".as_bytes()).unwrap();
        assert_eq!(parsed.graph.edge_count(), 1);
        assert_eq!(parsed.declared_edges, 7);
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_dimacs_str("c x\ne 1 2\n").unwrap_err(),
            GraphError::MissingProblemLine
        );
        assert_eq!(parse_dimacs_str("c only\n").unwrap_err(), GraphError::MissingProblemLine);
        match parse_dimacs_str("p edge 3 1\nc\ne 1 4\n").unwrap_err() {
            GraphError::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        match parse_dimacs_str("p edge 3 1\ne 1 x\n").unwrap_err() {
            GraphError::Parse { line, msg } => {
                assert_eq!(line, 2);
                assert!(msg.contains("`x`"));
            }
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_dimacs_str("p edge 3 1\ne 0 1\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3 1\np edge 3 1\n"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_dimacs_str("p edge 3\n"),
            Err(GraphError::Parse { line: 1, .. })
        ));
    }

    #[test]
    fn writes_one_based() {
        let g = Graph::from_edge_list(3, &[(0, 2)]).unwrap();
        let mut buf = Vec::new();
        write_dimacs(&g, &mut buf, Some("toy")).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "c toy\np edge 3 1\ne 1 3\n");
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..25, raw in proptest::collection::vec((0usize..25, 0usize..25), 0..80)) {
            let edges: Vec<_> = raw.into_iter().filter(|&(u, v)| u < n && v < n).collect();
            let g = Graph::from_edge_list(n, &edges).unwrap();
            let back = parse_dimacs_str(&to_dimacs_string(&g)).unwrap();
            prop_assert_eq!(back, g);
        }
    }
}
