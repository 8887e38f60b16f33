//! Text formats for parity-check matrices.
//!
//! Two formats are supported:
//!
//! * dense: a header line `rows cols` followed by one line per row of
//!   space-separated (or contiguous) 0/1 entries;
//! * alist: the sparse exchange format with a `cols rows` header, maximum
//!   degrees, per-column and per-row degree lists, then per-column and
//!   per-row neighbor lists with 1-based indices and optional zero padding.
//!
//! Blank lines and `#` comment lines are ignored in the dense format.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVec};

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Content lines paired with their 1-based position in the file.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .collect()
}

fn parse_usize(tok: &str, line: usize) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected a nonnegative integer, got {tok:?}")))
}

pub fn parse_dense(text: &str) -> Result<BitMatrix> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(parse_err(1, "empty input"));
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline, "header must be two integers: rows cols"));
    }
    let rows = parse_usize(toks[0], hline)?;
    let cols = parse_usize(toks[1], hline)?;
    if rows == 0 || cols == 0 {
        return Err(parse_err(hline, "rows and cols must be at least 1"));
    }
    if lines.len() != rows + 1 {
        return Err(parse_err(
            lines.last().map(|&(n, _)| n).unwrap_or(hline),
            format!("expected {rows} row lines, found {}", lines.len() - 1),
        ));
    }
    let mut out = Vec::with_capacity(rows);
    for &(lno, line) in &lines[1..] {
        let row = parse_dense_row(line, cols, lno)?;
        out.push(row);
    }
    BitMatrix::from_rows(out)
}

fn parse_dense_row(line: &str, cols: usize, lno: usize) -> Result<BitVec> {
    let toks: Vec<&str> = line.split_whitespace().collect();
    let digits: Vec<char> = if toks.len() == 1 && toks[0].len() == cols {
        toks[0].chars().collect()
    } else {
        if toks.len() != cols {
            return Err(parse_err(
                lno,
                format!("expected {cols} entries, found {}", toks.len()),
            ));
        }
        let mut cs = Vec::with_capacity(cols);
        for t in &toks {
            if t.len() != 1 {
                return Err(parse_err(lno, format!("entries must be 0 or 1, got {t:?}")));
            }
            cs.push(t.chars().next().unwrap());
        }
        cs
    };
    let mut v = BitVec::zeros(cols);
    for (i, c) in digits.iter().enumerate() {
        match c {
            '0' => {}
            '1' => v.set(i, true),
            c => return Err(parse_err(lno, format!("entries must be 0 or 1, got {c:?}"))),
        }
    }
    Ok(v)
}

pub fn format_dense(m: &BitMatrix) -> String {
    let mut s = format!("{} {}\n", m.rows(), m.cols());
    for row in m.row_iter() {
        let entries: Vec<&str> = (0..m.cols())
            .map(|i| if row.get(i) { "1" } else { "0" })
            .collect();
        s.push_str(&entries.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_alist(text: &str) -> Result<BitMatrix> {
    let lines = content_lines(text);
    let mut at = 0usize;
    let mut next = |expect: &str| -> Result<(usize, Vec<usize>)> {
        let Some(&(lno, line)) = lines.get(at) else {
            let last = lines.last().map(|&(n, _)| n).unwrap_or(1);
            return Err(parse_err(last, format!("unexpected end of file; {expect}")));
        };
        at += 1;
        let mut vals = Vec::new();
        for t in line.split_whitespace() {
            vals.push(parse_usize(t, lno)?);
        }
        Ok((lno, vals))
    };

    let (hline, header) = next("expected header: cols rows")?;
    if header.len() != 2 {
        return Err(parse_err(hline, "header must be two integers: cols rows"));
    }
    let (n, r) = (header[0], header[1]);
    if n == 0 || r == 0 {
        return Err(parse_err(hline, "cols and rows must be at least 1"));
    }
    let (dline, dmax) = next("expected maximum degrees")?;
    if dmax.len() != 2 {
        return Err(parse_err(dline, "expected two maximum degrees"));
    }
    let (cline, col_deg) = next("expected per-column degrees")?;
    if col_deg.len() != n {
        return Err(parse_err(cline, format!("expected {n} column degrees")));
    }
    let (rline, row_deg) = next("expected per-row degrees")?;
    if row_deg.len() != r {
        return Err(parse_err(rline, format!("expected {r} row degrees")));
    }

    let mut m = BitMatrix::zeros(r, n);
    for (i, &deg) in col_deg.iter().enumerate() {
        let (lno, vals) = next("expected a column neighbor list")?;
        let neighbors: Vec<usize> = vals.into_iter().filter(|&v| v != 0).collect();
        if neighbors.len() != deg {
            return Err(parse_err(
                lno,
                format!(
                    "column {} declares degree {deg} but lists {} neighbors",
                    i + 1,
                    neighbors.len()
                ),
            ));
        }
        for j in neighbors {
            if j > r {
                return Err(parse_err(lno, format!("row index {j} out of range 1..={r}")));
            }
            m.set(j - 1, i, true);
        }
    }
    for (j, &deg) in row_deg.iter().enumerate() {
        let (lno, vals) = next("expected a row neighbor list")?;
        let neighbors: Vec<usize> = vals.into_iter().filter(|&v| v != 0).collect();
        if neighbors.len() != deg {
            return Err(parse_err(
                lno,
                format!(
                    "row {} declares degree {deg} but lists {} neighbors",
                    j + 1,
                    neighbors.len()
                ),
            ));
        }
        for i in &neighbors {
            if *i > n {
                return Err(parse_err(lno, format!("column index {i} out of range 1..={n}")));
            }
        }
        // Cross-check against the column lists already applied.
        let mut expect: Vec<usize> = neighbors.iter().map(|&i| i - 1).collect();
        expect.sort_unstable();
        if m.row(j).support() != expect {
            return Err(parse_err(
                lno,
                format!("row {} neighbor list disagrees with the column lists", j + 1),
            ));
        }
    }
    Ok(m)
}

pub fn format_alist(m: &BitMatrix) -> String {
    let (r, n) = (m.rows(), m.cols());
    let col_support: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..r).filter(|&j| m.get(j, i)).collect())
        .collect();
    let row_support: Vec<Vec<usize>> = (0..r).map(|j| m.row(j).support()).collect();
    let dmax_c = col_support.iter().map(Vec::len).max().unwrap_or(0);
    let dmax_r = row_support.iter().map(Vec::len).max().unwrap_or(0);
    let join = |v: &[usize]| -> String {
        v.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    let one_based = |v: &[usize], pad: usize| -> String {
        let mut out: Vec<usize> = v.iter().map(|x| x + 1).collect();
        out.resize(pad, 0);
        join(&out)
    };
    let mut s = format!("{n} {r}\n{dmax_c} {dmax_r}\n");
    s.push_str(&join(
        &col_support.iter().map(Vec::len).collect::<Vec<_>>(),
    ));
    s.push('\n');
    s.push_str(&join(
        &row_support.iter().map(Vec::len).collect::<Vec<_>>(),
    ));
    s.push('\n');
    for c in &col_support {
        s.push_str(&one_based(c, dmax_c));
        s.push('\n');
    }
    for rw in &row_support {
        s.push_str(&one_based(rw, dmax_r));
        s.push('\n');
    }
    s
}

/// Dense when the line after the header looks like a 0/1 row of the declared
/// width; alist otherwise.
pub fn parse_auto(text: &str) -> Result<BitMatrix> {
    let lines = content_lines(text);
    let Some(&(hline, header)) = lines.first() else {
        return Err(parse_err(1, "empty input"));
    };
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(parse_err(hline, "header must be two integers"));
    }
    let b = parse_usize(toks[1], hline)?;
    let looks_dense = lines.get(1).is_some_and(|&(_, second)| {
        let stoks: Vec<&str> = second.split_whitespace().collect();
        let zero_one = stoks.iter().all(|t| *t == "0" || *t == "1");
        (zero_one && stoks.len() == b)
            || (stoks.len() == 1
                && stoks[0].len() == b
                && stoks[0].chars().all(|c| c == '0' || c == '1'))
    });
    if looks_dense {
        parse_dense(text)
    } else {
        parse_alist(text)
    }
}
