//! The text file formats: partial functions, covering codes, and both
//! protocol kinds. All formats are line-oriented; parsers reject malformed
//! input with file, line and column diagnostics.
//!
//! Bit conventions, shared with the in-memory types: the integer encoding
//! of a point indexes the 2^n masks, coordinate x_1 is the least
//! significant bit of a packed word and the leftmost character of a binary
//! string. Hex masks encode ceil(2^n/8) bytes, lowest address first, bit i
//! at bit (i mod 8) of byte i/8.

use crate::boolfn::{MessageMap, PartialFn};
use crate::codes::CoveringCode;
use crate::error::{Error, Result};
use crate::gf2::{mask_from_hex, mask_to_hex, BitVector, CubeMask, Gf2Matrix};
use crate::nadt::NadtProtocol;
use crate::owcc::OneWayProtocol;

pub const FN_HEADER: &str = "xorcc-fn v1";
pub const CODE_HEADER: &str = "xorcc-code v1";
pub const NADT_HEADER: &str = "xorcc-nadt v1";
pub const ONEWAY_HEADER: &str = "xorcc-ow v1";

struct Lines<'a> {
    path: &'a str,
    lines: Vec<&'a str>,
    cursor: usize,
}

impl<'a> Lines<'a> {
    fn new(path: &'a str, text: &'a str) -> Self {
        Lines {
            path,
            lines: text.lines().collect(),
            cursor: 0,
        }
    }

    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_string(),
            line,
            col,
            msg: msg.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let lineno = self.cursor + 1;
        match self.lines.get(self.cursor) {
            Some(&l) => {
                self.cursor += 1;
                Ok((lineno, l))
            }
            None => Err(self.err(lineno, 1, format!("unexpected end of file, expected {what}"))),
        }
    }

    fn expect_header(&mut self, header: &str) -> Result<()> {
        let (lineno, l) = self.next("header")?;
        if l.trim_end() != header {
            return Err(self.err(lineno, 1, format!("expected header {header:?}, got {l:?}")));
        }
        Ok(())
    }

    /// Parse a `key value...` line into its fields, checking the keyword.
    fn keyed<'b>(&'b mut self, key: &str) -> Result<(usize, Vec<&'a str>)> {
        let (lineno, l) = self.next(&format!("'{key}' line"))?;
        let mut fields = l.split_whitespace();
        match fields.next() {
            Some(k) if k == key => Ok((lineno, fields.collect())),
            Some(k) => Err(self.err(lineno, 1, format!("expected keyword {key:?}, got {k:?}"))),
            None => Err(self.err(lineno, 1, format!("expected keyword {key:?} on a blank line"))),
        }
    }
}

fn parse_usize(lines: &Lines<'_>, lineno: usize, field: &str, what: &str) -> Result<usize> {
    field
        .parse::<usize>()
        .map_err(|_| lines.err(lineno, 1, format!("{what}: bad integer {field:?}")))
}

pub fn emit_partial_fn(f: &PartialFn) -> String {
    format!(
        "{FN_HEADER}\nn {}\ndefined {}\nvalue {}\n",
        f.n(),
        mask_to_hex(f.defined()),
        mask_to_hex(f.value())
    )
}

pub fn parse_partial_fn(path: &str, text: &str) -> Result<PartialFn> {
    let mut lines = Lines::new(path, text);
    lines.expect_header(FN_HEADER)?;
    let (lineno, fields) = lines.keyed("n")?;
    let [n] = fields[..] else {
        return Err(lines.err(lineno, 2, "expected exactly one integer after 'n'"));
    };
    let n = parse_usize(&lines, lineno, n, "dimension")?;
    let (lineno, fields) = lines.keyed("defined")?;
    let [hex] = fields[..] else {
        return Err(lines.err(lineno, 9, "expected one hex field after 'defined'"));
    };
    let defined = mask_from_hex(n, hex).map_err(|e| lines.err(lineno, 9, e.to_string()))?;
    let (lineno, fields) = lines.keyed("value")?;
    let [hex] = fields[..] else {
        return Err(lines.err(lineno, 7, "expected one hex field after 'value'"));
    };
    let value = mask_from_hex(n, hex).map_err(|e| lines.err(lineno, 7, e.to_string()))?;
    PartialFn::new(n, defined, value).map_err(|e| lines.err(lineno, 1, e.to_string()))
}

pub fn emit_covering_code(c: &CoveringCode) -> String {
    let mut out = format!(
        "{CODE_HEADER}\nn {} K {} R {}\n",
        c.n(),
        c.len(),
        c.radius()
    );
    for w in c.codewords() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

pub fn parse_covering_code(path: &str, text: &str) -> Result<CoveringCode> {
    let mut lines = Lines::new(path, text);
    lines.expect_header(CODE_HEADER)?;
    let (lineno, fields) = lines.keyed("n")?;
    let [n, kw_k, k, kw_r, r] = fields[..] else {
        return Err(lines.err(lineno, 1, "expected 'n <int> K <int> R <int>'"));
    };
    if kw_k != "K" || kw_r != "R" {
        return Err(lines.err(lineno, 1, "expected 'n <int> K <int> R <int>'"));
    }
    let n = parse_usize(&lines, lineno, n, "length")?;
    let k = parse_usize(&lines, lineno, k, "codeword count")?;
    let r = parse_usize(&lines, lineno, r, "radius")?;
    let mut codewords = Vec::with_capacity(k);
    for _ in 0..k {
        let (lineno, l) = lines.next("codeword")?;
        let l = l.trim_end();
        codewords.push(parse_binary_word(&lines, lineno, n, l)?);
    }
    CoveringCode::new(n, codewords, r as u32).map_err(|e| lines.err(1, 1, e.to_string()))
}

/// Binary string with x_1 leftmost.
fn parse_binary_word(lines: &Lines<'_>, lineno: usize, n: usize, s: &str) -> Result<BitVector> {
    if s.len() != n {
        return Err(lines.err(
            lineno,
            1,
            format!("expected {n} binary digits, got {}", s.len()),
        ));
    }
    let mut bits = 0u64;
    for (i, ch) in s.chars().enumerate() {
        match ch {
            '1' => bits |= 1 << i,
            '0' => {}
            _ => {
                return Err(lines.err(lineno, i + 1, format!("invalid binary digit {ch:?}")));
            }
        }
    }
    BitVector::new(n, bits).map_err(|e| lines.err(lineno, 1, e.to_string()))
}

pub fn emit_nadt_protocol(n: usize, p: &NadtProtocol) -> String {
    let mut out = format!("{NADT_HEADER}\nn {n}\np {}\n", p.query_count());
    for i in 0..p.query_count() {
        out.push_str(&p.queries().row(i).to_string());
        out.push('\n');
    }
    let mut table = String::with_capacity(1 << p.query_count());
    for s in 0..1u64 << p.query_count() {
        table.push(if p.table().get(s) { '1' } else { '0' });
    }
    out.push_str(&table);
    out.push('\n');
    out
}

pub fn parse_nadt_protocol(path: &str, text: &str) -> Result<(usize, NadtProtocol)> {
    let mut lines = Lines::new(path, text);
    lines.expect_header(NADT_HEADER)?;
    let (lineno, fields) = lines.keyed("n")?;
    let [n] = fields[..] else {
        return Err(lines.err(lineno, 2, "expected one integer after 'n'"));
    };
    let n = parse_usize(&lines, lineno, n, "dimension")?;
    let (lineno, fields) = lines.keyed("p")?;
    let [p] = fields[..] else {
        return Err(lines.err(lineno, 2, "expected one integer after 'p'"));
    };
    let p = parse_usize(&lines, lineno, p, "query count")?;
    let mut rows = Vec::with_capacity(p);
    for _ in 0..p {
        let (lineno, l) = lines.next("query row")?;
        rows.push(parse_binary_word(&lines, lineno, n, l.trim_end())?);
    }
    let queries = Gf2Matrix::new(n, rows).map_err(|e| lines.err(1, 1, e.to_string()))?;
    let (lineno, l) = lines.next("answer table")?;
    let l = l.trim_end();
    if l.len() != 1 << p {
        return Err(lines.err(
            lineno,
            1,
            format!("expected {} table bits, got {}", 1 << p, l.len()),
        ));
    }
    let mut table = CubeMask::zeros(p).map_err(|e| lines.err(lineno, 1, e.to_string()))?;
    for (i, ch) in l.chars().enumerate() {
        match ch {
            '1' => table.set(i as u64),
            '0' => {}
            _ => return Err(lines.err(lineno, i + 1, format!("invalid table bit {ch:?}"))),
        }
    }
    let proto = NadtProtocol::new(queries, table).map_err(|e| lines.err(1, 1, e.to_string()))?;
    Ok((n, proto))
}

pub fn emit_oneway_protocol(p: &OneWayProtocol) -> String {
    let n = p.h().n();
    let mut out = format!("{ONEWAY_HEADER}\nn {n}\nt {}\n", p.t());
    let labels: Vec<String> = (0..1u64 << n)
        .map(|x| p.h().label(x).to_string())
        .collect();
    out.push_str(&labels.join(" "));
    out.push('\n');
    for row in p.phi() {
        out.push_str(&format!(
            "{} {}\n",
            mask_to_hex(row.value()),
            mask_to_hex(row.defined())
        ));
    }
    out
}

pub fn parse_oneway_protocol(path: &str, text: &str) -> Result<OneWayProtocol> {
    let mut lines = Lines::new(path, text);
    lines.expect_header(ONEWAY_HEADER)?;
    let (lineno, fields) = lines.keyed("n")?;
    let [n] = fields[..] else {
        return Err(lines.err(lineno, 2, "expected one integer after 'n'"));
    };
    let n = parse_usize(&lines, lineno, n, "dimension")?;
    let (lineno, fields) = lines.keyed("t")?;
    let [t] = fields[..] else {
        return Err(lines.err(lineno, 2, "expected one integer after 't'"));
    };
    let t = parse_usize(&lines, lineno, t, "message width")?;
    let (lineno, l) = lines.next("label row")?;
    let labels: Vec<u32> = l
        .split_whitespace()
        .map(|w| {
            w.parse::<u32>()
                .map_err(|_| lines.err(lineno, 1, format!("bad label {w:?}")))
        })
        .collect::<Result<_>>()?;
    let h = MessageMap::new(n, t, labels).map_err(|e| lines.err(lineno, 1, e.to_string()))?;
    let mut phi = Vec::with_capacity(1 << t);
    for _ in 0..1u64 << t {
        let (lineno, l) = lines.next("answer row")?;
        let mut fields = l.split_whitespace();
        let (Some(vh), Some(dh), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(lines.err(lineno, 1, "expected '<value-hex> <defined-hex>'"));
        };
        let value = mask_from_hex(n, vh).map_err(|e| lines.err(lineno, 1, e.to_string()))?;
        let defined = mask_from_hex(n, dh).map_err(|e| lines.err(lineno, 1, e.to_string()))?;
        phi.push(PartialFn::new(n, defined, value).map_err(|e| lines.err(lineno, 1, e.to_string()))?);
    }
    OneWayProtocol::new(h, phi).map_err(|e| lines.err(1, 1, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::make_fk;
    use crate::codes::hamming_code;
    use crate::nadt::synthesize_nadt;
    use crate::owcc::synthesize_oneway;
    use crate::shifts::{max_subspace_in, preserving_shifts};

    #[test]
    fn partial_fn_golden_bytes() {
        // f_1 at n=3: defined on {000,001,010,100,111} -> byte 0x97;
        // value on {111} -> byte 0x80
        let f = make_fk(3, 1).unwrap();
        let text = emit_partial_fn(&f);
        assert_eq!(text, "xorcc-fn v1\nn 3\ndefined 97\nvalue 80\n");
        let back = parse_partial_fn("golden.fn", &text).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn partial_fn_round_trip_random() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(211);
        for _ in 0..100 {
            let n = rng.gen_range(1..=10usize);
            let mut defined = CubeMask::zeros(n).unwrap();
            let mut value = CubeMask::zeros(n).unwrap();
            for x in 0..1u64 << n {
                if rng.gen_bool(0.6) {
                    defined.set(x);
                    if rng.gen_bool(0.5) {
                        value.set(x);
                    }
                }
            }
            let f = PartialFn::new(n, defined, value).unwrap();
            let text = emit_partial_fn(&f);
            assert_eq!(parse_partial_fn("t.fn", &text).unwrap(), f);
            // bit-identical re-emission
            assert_eq!(emit_partial_fn(&parse_partial_fn("t.fn", &text).unwrap()), text);
        }
    }

    #[test]
    fn partial_fn_diagnostics() {
        let e = parse_partial_fn("bad.fn", "xorcc-fn v2\n").unwrap_err();
        assert!(e.to_string().contains("bad.fn:1:1"), "{e}");
        let e = parse_partial_fn("bad.fn", "xorcc-fn v1\nn 3\ndefined zz\nvalue 00\n").unwrap_err();
        assert!(e.to_string().contains("bad.fn:3:"), "{e}");
        // value outside defined is rejected
        let e = parse_partial_fn("bad.fn", "xorcc-fn v1\nn 3\ndefined 01\nvalue 80\n").unwrap_err();
        assert!(e.to_string().contains("value mask"), "{e}");
    }

    #[test]
    fn covering_code_round_trip() {
        let c = hamming_code(3).unwrap();
        let text = emit_covering_code(&c);
        assert!(text.starts_with("xorcc-code v1\nn 7 K 16 R 1\n"));
        let back = parse_covering_code("h3.code", &text).unwrap();
        assert_eq!(back, c);
        // identical codeword order
        assert_eq!(emit_covering_code(&back), text);
    }

    #[test]
    fn covering_code_diagnostics() {
        let e = parse_covering_code("c.code", "xorcc-code v1\nn 3 K 1 R 0\n01\n").unwrap_err();
        assert!(e.to_string().contains("c.code:3:1"), "{e}");
        let e = parse_covering_code("c.code", "xorcc-code v1\nn 3 K 1 R 0\n0x1\n").unwrap_err();
        assert!(e.to_string().contains("c.code:3:2"), "{e}");
    }

    #[test]
    fn nadt_protocol_round_trip() {
        let f = make_fk(4, 1).unwrap();
        let l = max_subspace_in(&preserving_shifts(&f));
        let p = synthesize_nadt(&f, &l).unwrap();
        let text = emit_nadt_protocol(4, &p);
        let (n, back) = parse_nadt_protocol("p.nadt", &text).unwrap();
        assert_eq!(n, 4);
        assert_eq!(back, p);
        assert_eq!(emit_nadt_protocol(4, &back), text);
    }

    #[test]
    fn oneway_protocol_round_trip() {
        let f = make_fk(3, 1).unwrap();
        let h = MessageMap::from_fn(3, 3, |x| x as u32).unwrap();
        let p = synthesize_oneway(&f, &h).unwrap();
        let text = emit_oneway_protocol(&p);
        let back = parse_oneway_protocol("p.ow", &text).unwrap();
        assert_eq!(emit_oneway_protocol(&back), text);
        assert!(crate::owcc::verify_oneway(&f, &back).unwrap());
    }
}
