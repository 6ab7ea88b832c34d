//! Matrix and permutation text formats.
//!
//! Native matrices: `matrix q=<q> rows=<r> cols=<c>` followed by r lines of
//! c integers in 0..q. Native permutations: `permutation degree=<n>`
//! followed by n 1-based images. A file may hold several objects.
//!
//! Compatibility (classic exchange) format: matrices start with the header
//! `1 <q> <rows> <cols>` and continue with one digit per entry, each row
//! starting on a new line and wrapped at 80 columns (q ≤ 9 only).
//! Permutations start with `12 1 <degree> <count>` followed by one 1-based
//! image per line.

use crate::error::{Error, Result};
use crate::ffield::{Field, Mat};
use crate::perm::Perm;

const WRAP: usize = 80;

#[derive(Clone, Debug)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

fn tokens(text: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    for (l, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        let mut start = None;
        for (c, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push(Tok { text: &line[s..c], line: l + 1, col: s + 1 });
                }
            } else if start.is_none() {
                start = Some(c);
            }
        }
    }
    out
}

fn err(t: &Tok, msg: impl Into<String>) -> Error {
    Error::parse(t.line, t.col, msg)
}

fn end_err(text: &str, msg: impl Into<String>) -> Error {
    Error::parse(text.lines().count().max(1), 1, msg)
}

fn num(t: &Tok) -> Result<u64> {
    t.text.parse().map_err(|_| err(t, format!("expected a non-negative integer, found '{}'", t.text)))
}

fn keyed(t: &Tok, key: &str) -> Result<u64> {
    let v = t
        .text
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| err(t, format!("expected '{key}=<n>', found '{}'", t.text)))?;
    v.parse().map_err(|_| err(t, format!("bad value in '{}'", t.text)))
}

fn field_for(q: u64, t: &Tok, want: Option<&Field>) -> Result<Field> {
    let f = Field::from_order(q as u32).map_err(|e| err(t, e.to_string()))?;
    if let Some(w) = want {
        if w.q() != f.q() {
            return Err(err(t, format!("matrix over GF({q}) but {} expected", w.name())));
        }
        return Ok(w.clone());
    }
    Ok(f)
}

/// Parse all matrices in a file (either format). `want` fixes the field.
pub fn parse_matrices(text: &str, want: Option<&Field>) -> Result<Vec<Mat>> {
    let toks = tokens(text);
    if toks.first().map(|t| t.text) == Some("1") {
        return parse_matrices_compat(text, want);
    }
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let h = &toks[i];
        if h.text != "matrix" {
            return Err(err(h, format!("expected 'matrix', found '{}'", h.text)));
        }
        let hdr = toks.get(i + 1..i + 4).ok_or_else(|| err(h, "truncated matrix header"))?;
        let q = keyed(&hdr[0], "q")?;
        let rows = keyed(&hdr[1], "rows")? as usize;
        let cols = keyed(&hdr[2], "cols")? as usize;
        let f = field_for(q, &hdr[0], want)?;
        i += 4;
        let mut data = Vec::with_capacity(rows * cols);
        let mut prev_line = hdr[2].line;
        for r in 0..rows {
            for c in 0..cols {
                let t =
                    toks.get(i).ok_or_else(|| end_err(text, format!("truncated matrix: row {} of {rows}", r + 1)))?;
                if c == 0 && t.line == prev_line {
                    return Err(err(t, "each matrix row must start on a new line"));
                }
                if c > 0 && t.line != prev_line {
                    return Err(err(t, format!("row {} has {c} entries, expected {cols}", r + 1)));
                }
                prev_line = t.line;
                let v = num(t)?;
                if v >= q {
                    return Err(err(t, format!("entry {v} out of range for q={q}")));
                }
                data.push(v as u8);
                i += 1;
            }
        }
        if let Some(t) = toks.get(i) {
            if t.line == prev_line && rows > 0 {
                return Err(err(t, format!("row {rows} has more than {cols} entries")));
            }
        }
        out.push(Mat::from_vec(&f, rows, cols, data)?);
    }
    Ok(out)
}

fn parse_matrices_compat(text: &str, want: Option<&Field>) -> Result<Vec<Mat>> {
    let lines: Vec<&str> = text.lines().collect();
    let mut out = Vec::new();
    let mut l = 0;
    while l < lines.len() {
        if lines[l].trim().is_empty() {
            l += 1;
            continue;
        }
        let toks = tokens(lines[l]);
        let at = |i: usize| Tok { line: l + 1, ..toks[i].clone() };
        if toks.len() != 4 || toks[0].text != "1" {
            return Err(Error::parse(l + 1, 1, "expected header '1 <q> <rows> <cols>'"));
        }
        let q = num(&at(1))?;
        let rows = num(&at(2))? as usize;
        let cols = num(&at(3))? as usize;
        if q > 9 {
            return Err(err(&at(1), "compatibility format supports q ≤ 9 only"));
        }
        let f = field_for(q, &at(1), want)?;
        l += 1;
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let mut got = 0;
            while got < cols {
                let line =
                    lines.get(l).ok_or_else(|| end_err(text, format!("truncated matrix: row {} of {rows}", r + 1)))?;
                for (c, ch) in line.char_indices() {
                    if ch.is_whitespace() {
                        continue;
                    }
                    let d = ch
                        .to_digit(10)
                        .ok_or_else(|| Error::parse(l + 1, c + 1, format!("expected a digit, found '{ch}'")))?;
                    if d as u64 >= q {
                        return Err(Error::parse(l + 1, c + 1, format!("entry {d} out of range for q={q}")));
                    }
                    if got == cols {
                        return Err(Error::parse(l + 1, c + 1, format!("row {} has more than {cols} entries", r + 1)));
                    }
                    data.push(d as u8);
                    got += 1;
                }
                l += 1;
            }
        }
        out.push(Mat::from_vec(&f, rows, cols, data)?);
    }
    Ok(out)
}

pub fn write_matrix(m: &Mat) -> String {
    let mut s = format!("matrix q={} rows={} cols={}\n", m.field().q(), m.rows(), m.cols());
    for r in m.row_iter() {
        let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_matrix_compat(m: &Mat) -> Result<String> {
    let q = m.field().q();
    if q > 9 {
        return Err(Error::Input("compatibility format supports q ≤ 9 only".into()));
    }
    let mut s = format!("1 {} {} {}\n", q, m.rows(), m.cols());
    for r in m.row_iter() {
        let digits: String = r.iter().map(|x| char::from(b'0' + x)).collect();
        for chunk in digits.as_bytes().chunks(WRAP) {
            s.push_str(std::str::from_utf8(chunk).expect("ascii"));
            s.push('\n');
        }
        if r.is_empty() {
            s.push('\n');
        }
    }
    Ok(s)
}

fn perm_from_images(images: Vec<u32>, toks: &[Tok]) -> Result<Perm> {
    let n = images.len();
    let mut seen = vec![false; n];
    for (i, &x) in images.iter().enumerate() {
        if x as usize >= n {
            return Err(err(&toks[i], format!("image {} of point {} is out of range 1..{n}", x + 1, i + 1)));
        }
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(err(&toks[i], format!("not a bijection: image {} repeated at point {}", x + 1, i + 1)));
        }
    }
    Perm::from_images(images)
}

fn image(t: &Tok) -> Result<u32> {
    let v = num(t)?;
    if v == 0 {
        return Err(err(t, "images are 1-based"));
    }
    Ok((v - 1) as u32)
}

/// Parse all permutations in a file (either format).
pub fn parse_perms(text: &str) -> Result<Vec<Perm>> {
    let toks = tokens(text);
    let mut out = Vec::new();
    let mut i = 0;
    if toks.first().map(|t| t.text) == Some("12") {
        let hdr = toks.get(0..4).ok_or_else(|| end_err(text, "truncated permutation header"))?;
        if hdr[1].text != "1" {
            return Err(err(&hdr[1], "expected header '12 1 <degree> <count>'"));
        }
        let n = num(&hdr[2])? as usize;
        let k = num(&hdr[3])? as usize;
        i = 4;
        for p in 0..k {
            let ts =
                toks.get(i..i + n).ok_or_else(|| end_err(text, format!("truncated permutation {} of {k}", p + 1)))?;
            let imgs = ts.iter().map(image).collect::<Result<Vec<_>>>()?;
            out.push(perm_from_images(imgs, ts)?);
            i += n;
        }
        if let Some(t) = toks.get(i) {
            return Err(err(t, "trailing data after the declared permutations"));
        }
        return Ok(out);
    }
    while i < toks.len() {
        let h = &toks[i];
        if h.text != "permutation" {
            return Err(err(h, format!("expected 'permutation', found '{}'", h.text)));
        }
        let n = keyed(toks.get(i + 1).ok_or_else(|| err(h, "truncated permutation header"))?, "degree")? as usize;
        i += 2;
        let ts =
            toks.get(i..i + n).ok_or_else(|| end_err(text, format!("truncated permutation: expected {n} images")))?;
        let imgs = ts.iter().map(image).collect::<Result<Vec<_>>>()?;
        out.push(perm_from_images(imgs, ts)?);
        i += n;
    }
    Ok(out)
}

pub fn write_perm(p: &Perm) -> String {
    let imgs: Vec<String> = p.images().iter().map(|x| (x + 1).to_string()).collect();
    format!("permutation degree={}\n{}\n", p.degree(), imgs.join(" "))
}

pub fn write_perms_compat(ps: &[Perm]) -> Result<String> {
    let n = ps.first().map(|p| p.degree()).unwrap_or(0);
    let mut s = format!("12 1 {} {}\n", n, ps.len());
    for p in ps {
        if p.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, got: p.degree() });
        }
        for x in p.images() {
            s.push_str(&format!("{}\n", x + 1));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn native_round_trip() {
        let f = Field::from_order(9).unwrap();
        let m = Mat::from_rows(&f, &[vec![0, 8, 3], vec![1, 2, 7]]).unwrap();
        let back = parse_matrices(&write_matrix(&m), None).unwrap();
        assert_eq!(back, vec![m]);
        let id = Mat::identity(&Field::prime(3).unwrap(), 3);
        assert_eq!(parse_matrices(&write_matrix(&id), None).unwrap(), vec![id]);
    }

    #[test]
    fn compat_matrix() {
        let text = "1 3 8 8\n".to_string() + &"01201201\n".repeat(8);
        let m = parse_matrices(&text, None).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!((m[0].rows(), m[0].cols(), m[0].get(0, 2)), (8, 8, 2));
        assert_eq!(m[0].field().q(), 3);
        let w = write_matrix_compat(&m[0]).unwrap();
        assert_eq!(parse_matrices(&w, None).unwrap(), m);
        // wrapped rows
        let f = Field::prime(2).unwrap();
        let wide = Mat::from_vec(&f, 2, 170, (0..340).map(|i| (i % 3 == 0) as u8).collect()).unwrap();
        let w = write_matrix_compat(&wide).unwrap();
        assert!(w.lines().all(|l| l.len() <= 80));
        assert_eq!(parse_matrices(&w, None).unwrap(), vec![wide]);
    }

    #[test]
    fn matrix_errors_have_positions() {
        match parse_matrices("matrix q=9 rows=1 cols=2\n3 9\n", None) {
            Err(Error::Parse { line: 2, col: 3, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_matrices("matrix q=3 rows=2 cols=2\n1 0\n", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_matrices("matrix q=3 rows=1 cols=2\n1 0 1\n", None), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_matrices("matrx q=3 rows=1 cols=1\n1\n", None),
            Err(Error::Parse { line: 1, col: 1, .. })
        ));
        assert!(matches!(parse_matrices("1 3 2 2\n01\n", None), Err(Error::Parse { .. })));
        let f9 = Field::from_order(9).unwrap();
        assert!(parse_matrices("matrix q=3 rows=1 cols=1\n1\n", Some(&f9)).is_err());
    }

    #[test]
    fn perms() {
        let id = Perm::identity(8);
        assert_eq!(parse_perms(&write_perm(&id)).unwrap(), vec![id.clone()]);
        let c = Perm::from_cycles(704, &[vec![0, 5, 703]]).unwrap();
        let text = write_perms_compat(std::slice::from_ref(&c)).unwrap();
        assert!(text.starts_with("12 1 704 1\n"));
        let back = parse_perms(&text).unwrap();
        assert_eq!(back[0].degree(), 704);
        assert_eq!(back, vec![c]);
        match parse_perms("permutation degree=3\n1 1 2\n") {
            Err(Error::Parse { line: 2, col: 3, msg }) => assert!(msg.contains("repeated")),
            other => panic!("{other:?}"),
        }
        assert!(parse_perms("permutation degree=3\n1 2\n").is_err());
        assert!(parse_perms("permutation degree=2\n0 1\n").is_err());
    }
}
