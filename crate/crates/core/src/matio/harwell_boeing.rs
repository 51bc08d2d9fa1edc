//! Harwell-Boeing reader for assembled real matrices (RUA / RSA).

use crate::linalg::Scalar;
use crate::{Error, Result, SparseMatrix};

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

/// Fixed-width field layout taken from a FORTRAN edit descriptor such as
/// `(16I5)` or `(1P,4D20.12)`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct FieldLayout {
    per_line: usize,
    width: usize,
}

fn parse_format(fmt: &str, line: usize) -> Result<FieldLayout> {
    let upper = fmt.trim().to_ascii_uppercase();
    let inner = upper.trim_start_matches('(').trim_end_matches(')');
    // the data descriptor is the last comma-separated item; drop any `kP` scale factor
    let item = inner.rsplit(',').next().unwrap_or("").trim();
    let item = match item.find('P') {
        Some(p) => &item[p + 1..],
        None => item,
    };
    let letter = match item.find(['I', 'E', 'D', 'F', 'G']) {
        Some(p) => p,
        None => return perr(line, format!("unsupported FORTRAN format `{fmt}`")),
    };
    let per_line = if letter == 0 {
        1
    } else {
        match item[..letter].parse::<usize>() {
            Ok(v) => v,
            Err(_) => return perr(line, format!("bad repeat count in `{fmt}`")),
        }
    };
    let width_str = item[letter + 1..].split('.').next().unwrap_or("");
    match width_str.parse::<usize>() {
        Ok(width) if width > 0 && per_line > 0 => Ok(FieldLayout { per_line, width }),
        _ => perr(line, format!("bad field width in `{fmt}`")),
    }
}

fn parse_real(tok: &str) -> Option<f64> {
    let t = tok.trim().replace(['D', 'd'], "E");
    if let Ok(v) = t.parse::<f64>() {
        return Some(v);
    }
    // FORTRAN permits an exponent without the letter: `1.5-03`
    let pos = t.rfind(['+', '-']).filter(|&p| p > 0 && !t[..p].ends_with(['E', 'e']))?;
    format!("{}E{}", &t[..pos], &t[pos..]).parse().ok()
}

/// Reads `count` fixed-width items starting at `lines[start]`.
fn read_items<'a>(
    lines: &[&'a str],
    start: usize,
    ncards: usize,
    count: usize,
    layout: FieldLayout,
) -> Result<Vec<(usize, &'a str)>> {
    let mut out = Vec::with_capacity(count);
    for (k, line) in lines.iter().enumerate().skip(start).take(ncards) {
        for f in 0..layout.per_line {
            if out.len() == count {
                break;
            }
            let lo = f * layout.width;
            if lo >= line.len() {
                break;
            }
            let hi = (lo + layout.width).min(line.len());
            let tok = line.get(lo..hi).unwrap_or("").trim();
            if tok.is_empty() {
                break;
            }
            out.push((k + 1, tok));
        }
    }
    if out.len() != count {
        let line = (start + ncards).min(lines.len());
        return perr(line, format!("expected {count} items, found {}", out.len()));
    }
    Ok(out)
}

fn header_ints(line: &str, lineno: usize, skip: usize, n: usize) -> Result<Vec<usize>> {
    let body = line.get(skip..).unwrap_or("");
    let vals: Vec<usize> = body
        .split_whitespace()
        .take(n)
        .map(str::parse)
        .collect::<std::result::Result<_, _>>()
        .or_else(|_| perr(lineno, "bad integer in header"))?;
    if vals.len() < n {
        return perr(lineno, format!("expected {n} integers in header"));
    }
    Ok(vals)
}

pub fn read_harwell_boeing(text: &str) -> Result<SparseMatrix> {
    let lines: Vec<&str> = text.lines().collect();
    if lines.len() < 4 {
        return perr(lines.len(), "truncated Harwell-Boeing header");
    }
    let cards = header_ints(lines[1], 2, 0, 4)?;
    let rhscrd = lines[1].split_whitespace().nth(4).and_then(|t| t.parse::<usize>().ok()).unwrap_or(0);
    let (ptrcrd, indcrd, valcrd) = (cards[1], cards[2], cards[3]);

    let mxtype = lines[2].get(..3).unwrap_or("").to_ascii_uppercase();
    if mxtype != "RUA" && mxtype != "RSA" {
        return Err(Error::Unsupported(format!("Harwell-Boeing type `{mxtype}` (only RUA/RSA)")));
    }
    let dims = header_ints(lines[2], 3, 3, 3)?;
    let (nrow, ncol, nnz) = (dims[0], dims[1], dims[2]);
    if nrow != ncol {
        return perr(3, format!("matrix is {nrow}x{ncol}, only square matrices are supported"));
    }

    let fmt_line = lines[3];
    let field = |lo: usize, hi: usize| fmt_line.get(lo..hi.min(fmt_line.len())).unwrap_or("");
    let ptr_fmt = parse_format(field(0, 16), 4)?;
    let ind_fmt = parse_format(field(16, 32), 4)?;
    let val_fmt = parse_format(field(32, 52), 4)?;

    let start = if rhscrd > 0 { 5 } else { 4 };
    let ptrs = read_items(&lines, start, ptrcrd, ncol + 1, ptr_fmt)?;
    let inds = read_items(&lines, start + ptrcrd, indcrd, nnz, ind_fmt)?;
    let vals = read_items(&lines, start + ptrcrd + indcrd, valcrd, nnz, val_fmt)?;

    let to_idx = |(line, tok): (usize, &str)| -> Result<usize> {
        match tok.parse::<usize>() {
            Ok(v) if v >= 1 => Ok(v - 1),
            _ => perr(line, format!("bad index `{tok}`")),
        }
    };
    let colptr: Vec<usize> = ptrs.into_iter().map(to_idx).collect::<Result<_>>()?;
    let rowind: Vec<usize> = inds.into_iter().map(to_idx).collect::<Result<_>>()?;
    let values: Vec<f64> = vals
        .into_iter()
        .map(|(line, tok)| parse_real(tok).map_or_else(|| perr(line, format!("bad value `{tok}`")), Ok))
        .collect::<Result<_>>()?;
    if colptr[0] != 0 || colptr[ncol] != nnz || colptr.windows(2).any(|w| w[0] > w[1]) {
        return perr(start + 1, "column pointers inconsistent with NNZERO");
    }

    let symmetric = mxtype == "RSA";
    let mut trip = Vec::with_capacity(if symmetric { 2 * nnz } else { nnz });
    for j in 0..ncol {
        for k in colptr[j]..colptr[j + 1] {
            let i = rowind[k];
            if i >= nrow {
                return perr(start + ptrcrd + 1, format!("row index {} out of range", i + 1));
            }
            let v = Scalar::new(values[k], 0.0);
            trip.push((i, j, v));
            if symmetric && i != j {
                trip.push((j, i, v));
            }
        }
    }
    SparseMatrix::from_triplets(nrow, trip)
}
