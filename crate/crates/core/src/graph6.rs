//! graph6 encoding of simple graphs.
//!
//! Vertex count `N(n)` followed by the upper triangle of the adjacency matrix
//! in column order `(0,1), (0,2), (1,2), (0,3), ...`, packed six bits per
//! byte with 63 added, zero padded.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;

const HEADER: &str = ">>graph6<<";

pub fn parse(text: &str) -> Result<SimpleGraph> {
    let line = text.trim_end_matches(['\n', '\r']);
    let (body, base) = match line.strip_prefix(HEADER) {
        Some(rest) => (rest.as_bytes(), HEADER.len()),
        None => (line.as_bytes(), 0),
    };
    for (i, &b) in body.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside graph6 range")));
        }
    }
    let (n, header_len) = decode_n(body).map_err(|off| {
        Error::parse(base + off, "truncated vertex count")
    })?;
    let bits = n * n.saturating_sub(1) / 2;
    let want = header_len + bits.div_ceil(6);
    if body.len() != want {
        let off = base + body.len().min(want);
        return Err(Error::parse(
            off,
            format!("expected {want} bytes for n = {n}, found {}", body.len()),
        ));
    }
    let data = &body[header_len..];
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if let Some(&last) = data.last() {
        let used = bits - 6 * (data.len() - 1);
        if used < 6 && (last - 63) & ((1 << (6 - used)) - 1) != 0 {
            return Err(Error::parse(base + body.len() - 1, "nonzero padding bits"));
        }
    }
    SimpleGraph::new(n, edges)
}

fn decode_n(body: &[u8]) -> std::result::Result<(usize, usize), usize> {
    let val = |bytes: &[u8]| bytes.iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
    match body {
        [] => Err(0),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                Err(body.len())
            } else {
                Ok((val(&rest[..6]), 8))
            }
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                Err(body.len())
            } else {
                Ok((val(&rest[..3]), 4))
            }
        }
        [b, ..] => Ok(((b - 63) as usize, 1)),
    }
}

pub fn encode(g: &SimpleGraph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push((n >> s & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push((n >> s & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((acc << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ascii")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::iso::are_isomorphic;
    use proptest::prelude::*;

    #[test]
    fn complete_four() {
        let g = parse("C~").unwrap();
        assert_eq!((g.n(), g.m()), (4, 6));
        assert_eq!(encode(&g), "C~");
    }

    #[test]
    fn four_cycle() {
        let g = parse("Cr").unwrap();
        assert_eq!(g.m(), 4);
        assert!(g.degrees().iter().all(|&d| d == 2));
        assert!(are_isomorphic(&g, &Family::Cycle(4).build().unwrap()).unwrap());
        assert_eq!(encode(&g), "Cr");
    }

    #[test]
    fn single_edge() {
        let g = parse("A_").unwrap();
        assert_eq!((g.n(), g.m()), (2, 1));
    }

    #[test]
    fn petgraph_reference_string() {
        // edges a-c, a-e, b-d, d-e on five vertices
        let g = SimpleGraph::new(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(parse("DQc").unwrap(), g);
    }

    #[test]
    fn header_and_newline() {
        assert_eq!(parse(">>graph6<<C~\n").unwrap().m(), 6);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse(""), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse("C"), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse("C~~"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse("C\x20"), Err(Error::Parse { offset: 1, .. })));
        // n = 2 uses one data bit, the remaining five must be zero
        assert!(matches!(parse("A`"), Err(Error::Parse { offset: 1, .. })));
    }

    #[test]
    fn large_vertex_count_prefix() {
        let g = SimpleGraph::empty(70);
        let s = encode(&g);
        assert_eq!(&s.as_bytes()[..4], &[126, 63, 64, 63 + 6]);
        assert_eq!(parse(&s).unwrap(), g);
    }

    proptest! {
        #[test]
        fn round_trip(n in 0usize..12, seed in any::<u64>()) {
            let mut state = seed;
            let mut edges = Vec::new();
            for j in 1..n {
                for i in 0..j {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 63 == 1 {
                        edges.push((i, j));
                    }
                }
            }
            let g = SimpleGraph::new(n, edges).unwrap();
            let s = encode(&g);
            prop_assert_eq!(parse(&s).unwrap(), g);
            prop_assert_eq!(encode(&parse(&s).unwrap()), s);
        }
    }
}
