//! Line-based text formats for matrices, code descriptions, decode outcomes
//! and trial statistics. All writers are byte-deterministic.
//!
//! Matrix / subspace files (`MATFQ v1`):
//! ```text
//! MATFQ v1
//! q 2
//! rows 2
//! cols 7
//! 1 0 0 1 0 1 1
//! 0 1 0 1 1 0 0
//! ```
//!
//! Code files (`PSC v1`) carry q, k, n and both polynomials explicitly:
//! ```text
//! PSC v1
//! q 2
//! k 2
//! n 7
//! p 1 1 1
//! pp 1 1 0 1
//! ```

use crate::channel::TrialStats;
use crate::code::Code;
use crate::decoder::{DecodeOutcome, DecodeStatus};
use crate::error::{Error, Result};
use crate::ffcore::{Fq, MatF};

pub fn write_matf(m: &MatF) -> String {
    let mut out = String::new();
    out.push_str("MATFQ v1\n");
    out.push_str(&format!("q {}\n", m.q()));
    out.push_str(&format!("rows {}\n", m.rows()));
    out.push_str(&format!("cols {}\n", m.cols()));
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn keyed_line<'a>(lines: &mut impl Iterator<Item = &'a str>, key: &str) -> Result<Vec<u64>> {
    let line = lines
        .next()
        .ok_or_else(|| Error::Format(format!("missing `{key}` line")))?;
    let mut parts = line.split_whitespace();
    if parts.next() != Some(key) {
        return Err(Error::Format(format!(
            "expected `{key}` line, got `{line}`"
        )));
    }
    let values: Vec<u64> = parts
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::Format(format!("bad integer `{tok}` in `{key}` line")))
        })
        .collect::<Result<_>>()?;
    if values.is_empty() {
        return Err(Error::Format(format!("`{key}` line carries no value")));
    }
    Ok(values)
}

pub fn read_matf(text: &str) -> Result<MatF> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next() != Some("MATFQ v1") {
        return Err(Error::Format("missing MATFQ v1 header".into()));
    }
    let q = keyed_line(&mut lines, "q")?[0] as u32;
    Fq::get(q).map_err(|e| Error::Format(format!("bad q: {e}")))?;
    let rows = keyed_line(&mut lines, "rows")?[0] as usize;
    let cols = keyed_line(&mut lines, "cols")?[0] as usize;
    let mut data = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Format(format!("missing row {i}")))?;
        let entries: Vec<u32> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u32>()
                    .map_err(|_| Error::Format(format!("bad entry `{tok}` in row {i}")))
            })
            .collect::<Result<_>>()?;
        if entries.len() != cols {
            return Err(Error::Format(format!(
                "row {i} has {} entries, expected {cols}",
                entries.len()
            )));
        }
        data.extend(entries);
    }
    if lines.next().is_some() {
        return Err(Error::Format("trailing content after matrix rows".into()));
    }
    MatF::new(q, rows, cols, data).map_err(|e| Error::Format(e.to_string()))
}

/// Writers always emit explicit polynomials, even auto-selected ones.
pub fn write_code(c: &Code) -> String {
    let poly = |coeffs: &[u32]| {
        coeffs
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "PSC v1\nq {}\nk {}\nn {}\np {}\npp {}\n",
        c.q(),
        c.k(),
        c.n(),
        poly(c.p().coeffs()),
        poly(c.pp().coeffs())
    )
}

pub fn read_code(text: &str) -> Result<Code> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    if lines.next() != Some("PSC v1") {
        return Err(Error::Format("missing PSC v1 header".into()));
    }
    let q = keyed_line(&mut lines, "q")?[0] as u32;
    let k = keyed_line(&mut lines, "k")?[0] as usize;
    let n = keyed_line(&mut lines, "n")?[0] as usize;
    let p: Vec<u32> = keyed_line(&mut lines, "p")?
        .iter()
        .map(|&v| v as u32)
        .collect();
    let pp: Vec<u32> = keyed_line(&mut lines, "pp")?
        .iter()
        .map(|&v| v as u32)
        .collect();
    if lines.next().is_some() {
        return Err(Error::Format("trailing content after pp line".into()));
    }
    Code::build(q, k, n, Some(&p), Some(&pp)).map_err(|e| Error::Format(e.to_string()))
}

pub fn write_outcome(o: &DecodeOutcome) -> String {
    let mut out = String::new();
    let status = match o.status {
        DecodeStatus::Decoded => "decoded",
        DecodeStatus::NotDecodable => "not_decodable",
        DecodeStatus::InvalidInput => "invalid_input",
    };
    out.push_str(&format!("status {status}\n"));
    if let Some(index) = o.index {
        out.push_str(&format!("index {index}\n"));
    }
    if let Some(d) = o.distance {
        out.push_str(&format!("distance {d}\n"));
    }
    match o.pivot {
        Some(i) => out.push_str(&format!("pivot {i}\n")),
        None => out.push_str("pivot none\n"),
    }
    let ranks: Vec<String> = o.block_ranks.iter().map(|r| r.to_string()).collect();
    out.push_str(&format!("ranks {}\n", ranks.join(" ")));
    out
}

pub fn write_stats(s: &TrialStats) -> String {
    format!(
        "trials {}\ncorrect {}\nwrong {}\nundecodable {}\nguarantee {}\nrate {:.6}\n",
        s.trials,
        s.decoded_correct,
        s.decoded_wrong,
        s.not_decodable,
        s.guarantee_holds,
        s.success_rate
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matf_roundtrip() {
        let m = MatF::from_rows(2, &[vec![1, 0, 0, 1], vec![0, 1, 1, 0]]).unwrap();
        let text = write_matf(&m);
        assert_eq!(read_matf(&text).unwrap(), m);
        assert_eq!(text, "MATFQ v1\nq 2\nrows 2\ncols 4\n1 0 0 1\n0 1 1 0\n");
    }

    #[test]
    fn matf_rejects_garbage() {
        assert!(read_matf("nope").is_err());
        assert!(read_matf("MATFQ v1\nq 2\nrows 1\ncols 2\n7 0\n").is_err());
        assert!(read_matf("MATFQ v1\nq 2\nrows 1\ncols 2\n1\n").is_err());
        assert!(read_matf("MATFQ v1\nq 6\nrows 0\ncols 2\n").is_err());
        assert!(read_matf("MATFQ v1\nq 2\nrows 1\ncols 2\n1 0\nextra\n").is_err());
    }

    #[test]
    fn code_roundtrip() {
        let c = Code::build(2, 2, 7, None, None).unwrap();
        let text = write_code(&c);
        assert_eq!(text, "PSC v1\nq 2\nk 2\nn 7\np 1 1 1\npp 1 1 0 1\n");
        let back = read_code(&text).unwrap();
        assert_eq!(back.cardinality(), 41);
        assert!(read_code("PSC v1\nq 2\nk 2\nn 7\np 1 0 1\npp 1 1 0 1\n").is_err());
    }

    #[test]
    fn outcome_lines() {
        use crate::decoder::{decode, Received};
        let c = Code::build(2, 2, 5, None, None).unwrap();
        let w = c.encode(3).unwrap();
        let x = Received::new(&c, w.generator.clone()).unwrap();
        let text = write_outcome(&decode(&c, &x));
        assert!(text.starts_with("status decoded\nindex 3\ndistance 0\npivot 1\n"));
        assert!(text.contains("ranks "));
    }
}
