//! Document co-occurrence graphs from a document-by-word matrix.
//!
//! Input is coordinate text: a header `n_rows n_cols nnz` followed by
//! `row col value` triples (1-based). Lines starting with `%` are comments.
//! Two documents are adjacent iff they share at least `p` distinct words.

use std::io::BufRead;

use log::warn;

use crate::error::GraphError;
use crate::graph::Graph;

/// Binarized document-by-word matrix: for each document, its sorted words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DocTermMatrix {
    pub n_docs: usize,
    pub n_words: usize,
    pub doc_words: Vec<Vec<usize>>,
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T, GraphError> {
    let tok = tok.ok_or_else(|| GraphError::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| GraphError::Parse {
        line,
        msg: format!("malformed {what} `{tok}`"),
    })
}

impl DocTermMatrix {
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut dims: Option<(usize, usize, usize)> = None;
        let mut doc_words: Vec<Vec<usize>> = Vec::new();
        let mut entries = 0usize;

        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            let mut toks = trimmed.split_ascii_whitespace();
            match dims {
                None => {
                    let r: usize = field(toks.next(), line_no, "row count")?;
                    let c: usize = field(toks.next(), line_no, "column count")?;
                    let nnz: usize = field(toks.next(), line_no, "nonzero count")?;
                    doc_words = vec![Vec::new(); r];
                    dims = Some((r, c, nnz));
                }
                Some((r, c, _)) => {
                    let row: usize = field(toks.next(), line_no, "row index")?;
                    let col: usize = field(toks.next(), line_no, "column index")?;
                    let value: f64 = field(toks.next(), line_no, "value")?;
                    if row == 0 || row > r || col == 0 || col > c {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("entry ({row}, {col}) outside {r}x{c}"),
                        });
                    }
                    if !value.is_finite() || value < 0.0 {
                        return Err(GraphError::Parse {
                            line: line_no,
                            msg: format!("value {value} is not a nonnegative number"),
                        });
                    }
                    entries += 1;
                    if value != 0.0 {
                        doc_words[row - 1].push(col - 1);
                    }
                }
            }
        }

        let (n_docs, n_words, nnz) = dims.ok_or(GraphError::MissingHeader)?;
        if entries != nnz {
            warn!("header declares {nnz} entries, found {entries}");
        }
        for words in doc_words.iter_mut() {
            words.sort_unstable();
            words.dedup();
        }
        Ok(Self {
            n_docs,
            n_words,
            doc_words,
        })
    }

    /// Graph on documents; `{i, j}` is an edge iff they share `>= p` words.
    pub fn cooccurrence_graph(&self, p: usize) -> Result<Graph, GraphError> {
        if p == 0 {
            return Err(GraphError::InvalidThreshold);
        }
        let mut word_docs: Vec<Vec<usize>> = vec![Vec::new(); self.n_words];
        for (doc, words) in self.doc_words.iter().enumerate() {
            for &w in words {
                word_docs[w].push(doc);
            }
        }

        let mut lists: Vec<Vec<usize>> = vec![Vec::new(); self.n_docs];
        let mut shared = vec![0usize; self.n_docs];
        let mut touched = Vec::new();
        for i in 0..self.n_docs {
            for &w in &self.doc_words[i] {
                // word_docs[w] is ascending, so only the tail past i matters.
                let docs = &word_docs[w];
                let start = docs.partition_point(|&j| j <= i);
                for &j in &docs[start..] {
                    if shared[j] == 0 {
                        touched.push(j);
                    }
                    shared[j] += 1;
                }
            }
            for &j in &touched {
                if shared[j] >= p {
                    lists[i].push(j);
                    lists[j].push(i);
                }
                shared[j] = 0;
            }
            touched.clear();
        }
        Ok(Graph::from_neighbor_lists(lists))
    }
}

/// Parse coordinate text and build the co-occurrence graph at threshold `p`.
pub fn cooccurrence_graph<R: BufRead>(reader: R, p: usize) -> Result<Graph, GraphError> {
    DocTermMatrix::parse(reader)?.cooccurrence_graph(p)
}
