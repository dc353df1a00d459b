//! graph6 interchange format.
//!
//! One graph per line: a vertex-count header followed by the upper triangle
//! of the adjacency matrix in column order, six bits per printable byte
//! (value + 63). An optional `>>graph6<<` prefix is accepted and stripped.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::Graph;

pub const HEADER: &str = ">>graph6<<";

/// Largest order representable with the 4-byte size header.
pub const MAX_SHORT_ORDER: usize = 258_047;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte:#04x} at offset {offset} is outside the printable range 63..=126")]
    NonPrintable { offset: usize, byte: u8 },
    #[error("malformed size header at offset {offset}")]
    BadHeader { offset: usize },
    #[error("graph6 body truncated at offset {offset}: expected {expected} bytes in total")]
    Truncated { offset: usize, expected: usize },
    #[error("trailing garbage starting at offset {offset}")]
    TrailingGarbage { offset: usize },
    #[error("nonzero padding bits in final byte at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("graph order {0} exceeds the graph6 limit of {MAX_SHORT_ORDER}")]
    TooLarge(usize),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
    #[error("read failed: {0}")]
    Io(String),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Encodes `g` as a graph6 line (no header, no newline).
pub fn encode(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.order();
    if n > MAX_SHORT_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Decodes one graph6 line. A trailing `\n` / `\r\n` is tolerated.
pub fn decode(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let (skip, s) = match line.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    if s.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some((offset, &byte)) = s.iter().enumerate().find(|(_, b)| !(63..=126).contains(*b)) {
        return Err(Graph6Error::NonPrintable {
            offset: offset + skip,
            byte,
        });
    }
    let six = |i: usize| (s[i] - 63) as usize;
    let (n, start) = if s[0] < 126 {
        (six(0), 1)
    } else if s.len() >= 2 && s[1] < 126 {
        if s.len() < 4 {
            return Err(Graph6Error::BadHeader { offset: skip });
        }
        ((six(1) << 12) | (six(2) << 6) | six(3), 4)
    } else {
        if s.len() < 8 {
            return Err(Graph6Error::BadHeader { offset: skip });
        }
        let n = (2..8).fold(0usize, |acc, i| (acc << 6) | six(i));
        (n, 8)
    };
    // Short headers must be minimal.
    if (start == 4 && n <= 62) || (start == 8 && n <= MAX_SHORT_ORDER) {
        return Err(Graph6Error::BadHeader { offset: skip });
    }
    let need = body_len(n);
    if s.len() < start + need {
        return Err(Graph6Error::Truncated {
            offset: skip + s.len(),
            expected: start + need,
        });
    }
    if s.len() > start + need {
        return Err(Graph6Error::TrailingGarbage {
            offset: skip + start + need,
        });
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let pad = need * 6 - total_bits;
    if pad > 0 && (six(start + need - 1) & ((1 << pad) - 1)) != 0 {
        return Err(Graph6Error::NonzeroPadding {
            offset: skip + start + need - 1,
        });
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = six(start + k / 6);
            if (byte >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Reads every non-blank line of a graph6 stream.
pub fn read_all<R: BufRead>(reader: R) -> Result<Vec<Graph>, Graph6Error> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Graph6Error::Io(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(decode(line.trim()).map_err(|e| Graph6Error::AtLine {
            line: idx + 1,
            source: Box::new(e),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph_is_question_mark() {
        assert_eq!(encode(&Graph::empty(0)).unwrap(), "?");
        assert_eq!(decode("?").unwrap().order(), 0);
    }

    #[test]
    fn five_vertex_example() {
        let g = decode("D?{").unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(encode(&g).unwrap(), "D?{");
        // 'D?{' sets x(0,4), x(1,4), x(2,4), x(3,4): a star centred at 4.
        assert_eq!(g.degrees().0, vec![1, 1, 1, 1, 4]);
    }

    #[test]
    fn known_string_from_networkx_style_tooling() {
        // Path a-c, a-e, b-d, d-e on five vertices.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g).unwrap(), "DQc");
    }

    #[test]
    fn header_is_stripped() {
        let g = decode(">>graph6<<D?{\n").unwrap();
        assert_eq!(encode(&g).unwrap(), "D?{");
    }

    #[test]
    fn long_header_round_trip() {
        let mut g = Graph::empty(70);
        g.set_edge(0, 69);
        g.set_edge(3, 4);
        let s = encode(&g).unwrap();
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 70 - 64 + 63]);
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            decode("D?{x"),
            Err(Graph6Error::TrailingGarbage { offset: 3 })
        );
        assert_eq!(
            decode("D?"),
            Err(Graph6Error::Truncated {
                offset: 2,
                expected: 3
            })
        );
        assert_eq!(
            decode("D? {"),
            Err(Graph6Error::NonPrintable {
                offset: 2,
                byte: b' '
            })
        );
        assert_eq!(decode(""), Err(Graph6Error::Empty));
        assert_eq!(decode("~?"), Err(Graph6Error::BadHeader { offset: 0 }));
        // Short form used for n <= 62 must be rejected as non-minimal.
        assert_eq!(decode("~??D"), Err(Graph6Error::BadHeader { offset: 0 }));
        // C has 3 bits of data padded by 3 zero bits: '~' would set them.
        assert_eq!(decode("B~"), Err(Graph6Error::NonzeroPadding { offset: 1 }));
    }

    #[test]
    fn read_all_skips_blank_lines_and_reports_line_numbers() {
        let text = ">>graph6<<D?{\n\nC~\n";
        let gs = read_all(text.as_bytes()).unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(gs[1].edge_count(), 6);
        let err = read_all("C~\nD?{x\n".as_bytes()).unwrap_err();
        assert!(err.to_string().starts_with("line 2:"));
    }
}
