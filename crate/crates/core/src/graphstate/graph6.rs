use super::Graph;
use crate::error::{Error, Result};

const HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

pub(super) fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

pub(super) fn decode(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s).as_bytes();
    let bad = |why: &str| Error::Parse(format!("graph6: {why}"));
    if s.iter().any(|&c| !(63..=126).contains(&c)) {
        return Err(bad("byte outside 63..=126"));
    }
    let (n, body) = match s {
        [] => return Err(bad("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(bad("truncated size"));
            }
            let n = rest[..6]
                .iter()
                .fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize);
            (n, &rest[6..])
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(bad("truncated size"));
            }
            let n = rest[..3]
                .iter()
                .fold(0usize, |acc, &c| (acc << 6) | (c - 63) as usize);
            (n, &rest[3..])
        }
        [c, rest @ ..] => ((c - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    if body.len() != bits.div_ceil(6) {
        return Err(bad("body length does not match vertex count"));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let c = body[k / 6] - 63;
            if (c >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_vectors() {
        // a-c, a-e, b-d, d-e on five vertices
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
        assert_eq!(decode("DQc").unwrap(), g);
        assert_eq!(decode(">>graph6<<DQc\n").unwrap(), g);
        assert_eq!(encode(&Graph::empty(0)), "?");
        assert_eq!(encode(&Graph::empty(1)), "@");
        assert_eq!(encode(&super::super::complete(2)), "A_");
        assert_eq!(encode(&super::super::complete(4)), "C~");
    }

    #[test]
    fn rejects_malformed() {
        assert!(decode("").is_err());
        assert!(decode("D").is_err());
        assert!(decode("DQcc").is_err());
        assert!(decode("D Q").is_err());
    }

    #[test]
    fn round_trip_random_and_large() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2usize, 7, 13, 62, 63, 100] {
            let g = Graph::random(n, rng.gen_range(0.1..0.9), &mut rng);
            let text = encode(&g);
            if n > 62 {
                assert!(text.starts_with('~'));
            }
            assert_eq!(decode(&text).unwrap(), g);
        }
    }
}
