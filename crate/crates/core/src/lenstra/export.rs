//! Plain-text code files: a header line followed by one codeword per line.
//!
//! ```text
//! # lenstra q=13 r=9 G=1 disc=-4 n=3 tau=0.890625,0.890625
//! 4 6 9
//! 7 7 10
//! 1 8 11
//! ```

use std::io::Write;

use serde::Serialize;

use super::code::{build_code_with_tau, verify_code, CodeReport, LenstraCode};
use crate::error::{Error, Result};
use crate::quadfield::make_field_i64;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodeHeader {
    pub q: u64,
    pub r: u64,
    pub g: u32,
    pub disc: i64,
    pub n: usize,
    pub tau: (f64, f64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeFile {
    pub header: CodeHeader,
    pub codewords: Vec<Vec<u32>>,
}

pub fn header_line(c: &LenstraCode) -> String {
    format!(
        "# lenstra q={} r={} G={} disc={} n={} tau={},{}",
        c.q,
        c.r,
        c.g,
        c.disc(),
        c.n(),
        c.tau.0,
        c.tau.1
    )
}

pub fn write_code<W: Write>(c: &LenstraCode, mut out: W) -> Result<()> {
    writeln!(out, "{}", header_line(c))?;
    let mut line = String::new();
    for w in &c.codewords {
        line.clear();
        for (i, s) in w.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&s.to_string());
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(text: &str) -> Result<CodeHeader> {
    let rest = text
        .strip_prefix("# lenstra")
        .ok_or_else(|| parse_err(1, "expected header `# lenstra q=… r=… G=… disc=… n=… tau=…,…`"))?;
    let mut fields = std::collections::HashMap::new();
    for tok in rest.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("malformed header field `{tok}`")))?;
        fields.insert(k, v);
    }
    fn get<'a, T: std::str::FromStr>(
        f: &std::collections::HashMap<&str, &'a str>,
        key: &str,
    ) -> Result<T> {
        f.get(key)
            .ok_or_else(|| parse_err(1, format!("header lacks `{key}`")))?
            .parse()
            .map_err(|_| parse_err(1, format!("header field `{key}` is not a number")))
    }
    let tau_text = fields
        .get("tau")
        .ok_or_else(|| parse_err(1, "header lacks `tau`"))?;
    let (t1, t2) = tau_text
        .split_once(',')
        .ok_or_else(|| parse_err(1, "tau must be `τ1,τ2`"))?;
    let tau = (
        t1.parse().map_err(|_| parse_err(1, "bad τ1"))?,
        t2.parse().map_err(|_| parse_err(1, "bad τ2"))?,
    );
    Ok(CodeHeader {
        q: get(&fields, "q")?,
        r: get(&fields, "r")?,
        g: get(&fields, "G")?,
        disc: get(&fields, "disc")?,
        n: get(&fields, "n")?,
        tau,
    })
}

pub fn parse_code(text: &str) -> Result<CodeFile> {
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => parse_header(l.trim_end())?,
        None => return Err(parse_err(1, "empty file")),
    };
    let mut codewords = Vec::new();
    for (i, line) in lines {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        let word = line
            .split(' ')
            .map(|s| {
                let v: u64 = s
                    .parse()
                    .map_err(|_| parse_err(lineno, format!("`{s}` is not a symbol")))?;
                if v >= header.q {
                    return Err(parse_err(lineno, format!("symbol {v} ≥ q = {}", header.q)));
                }
                Ok(v as u32)
            })
            .collect::<Result<Vec<u32>>>()?;
        if word.len() != header.n {
            return Err(parse_err(
                lineno,
                format!("codeword has {} symbols, header says n = {}", word.len(), header.n),
            ));
        }
        codewords.push(word);
    }
    Ok(CodeFile { header, codewords })
}

#[derive(Clone, Debug, Serialize)]
pub struct FileReport {
    pub header: CodeHeader,
    pub report: CodeReport,
    /// Listed codewords equal the ones regenerated from the header, in order.
    pub regenerated_match: bool,
    /// First line (1-based, header is line 1) that differs from the regenerated code.
    pub first_mismatch_line: Option<usize>,
    pub pass: bool,
}

/// Verifies a code file: recomputes M and d on the listed codewords and checks
/// them against the code regenerated from the header's (Δ, r, q, G, τ).
pub fn verify_code_text(text: &str) -> Result<FileReport> {
    let file = parse_code(text)?;
    let h = &file.header;
    let field = make_field_i64(h.disc)?;
    let mut code = build_code_with_tau(&field, h.r, h.q, h.g, h.tau)?;
    if code.n() != h.n {
        return Err(parse_err(
            1,
            format!("header n = {} but N_(r,q)(K) = {}", h.n, code.n()),
        ));
    }
    let first_mismatch = (0..file.codewords.len().max(code.codewords.len()))
        .find(|&i| file.codewords.get(i) != code.codewords.get(i))
        .map(|i| i + 2);
    let regenerated_match = first_mismatch.is_none();
    // M and d are measured on what the file lists
    code.codewords = file.codewords.clone();
    let report = verify_code(&code)?;
    let pass = regenerated_match && report.ok;
    Ok(FileReport {
        header: file.header,
        report,
        regenerated_match,
        first_mismatch_line: first_mismatch,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lenstra::build_code;

    fn sample() -> String {
        let k = make_field_i64(-4).unwrap();
        let c = build_code(&k, 9, 13, 1, 0).unwrap();
        let mut buf = Vec::new();
        write_code(&c, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn round_trip_passes() {
        let text = sample();
        assert!(text.starts_with("# lenstra q=13 r=9 G=1 disc=-4 n=3 tau="));
        let rep = verify_code_text(&text).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn corrupted_symbol_fails() {
        let text = sample();
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut syms: Vec<u32> = lines[2].split(' ').map(|s| s.parse().unwrap()).collect();
        syms[0] = (syms[0] + 1) % 13;
        lines[2] = syms.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        let rep = verify_code_text(&lines.join("\n")).unwrap();
        assert!(!rep.pass);
        assert_eq!(rep.first_mismatch_line, Some(3));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let bad = "# lenstra q=13 r=9 G=1 disc=-4 n=3 tau=0.5,0.5\n1 2 3\n1 x 3\n";
        match parse_code(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        match parse_code("1 2 3\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("{other:?}"),
        }
        match parse_code("# lenstra q=13 r=9 G=1 disc=-4 n=3 tau=0.5,0.5\n1 2\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }
}
