//! CSV side tables: region containment, cause inverses, qualifier categories.
//!
//! Rows have no quoting requirements; lines starting with `#` are comments
//! and a first row whose leading cell is not an IRI is taken as a header.

use crate::causality::{InverseCause, InverseCauseMap, DROP_TOKEN};
use crate::error::IoError;
use crate::iri::{Iri, PrefixTable};
use crate::sort_builder::{Category, CategoryMap, Role};
use crate::validity::Containment;

fn rows(text: &str, path: &str, width: usize) -> Result<Vec<(usize, Vec<String>)>, IoError> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let prefixes = PrefixTable::default();
    let mut out = Vec::new();
    for (n, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| IoError::Parse {
            path: path.to_string(),
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = rec.position().map_or(n + 1, |p| p.line() as usize);
        let cells: Vec<String> = rec.iter().map(str::to_string).collect();
        if cells.iter().all(String::is_empty) {
            continue;
        }
        if out.is_empty() && n == 0 && prefixes.resolve(&cells[0]).is_err() {
            continue;
        }
        if cells.len() != width {
            return Err(IoError::Parse {
                path: path.to_string(),
                line,
                message: format!("expected {width} columns, found {}", cells.len()),
            });
        }
        out.push((line, cells));
    }
    Ok(out)
}

fn iri(cell: &str, path: &str, line: usize) -> Result<Iri, IoError> {
    PrefixTable::default()
        .resolve(cell)
        .map_err(|e| IoError::Parse {
            path: path.to_string(),
            line,
            message: e.to_string(),
        })
}

/// `inner,outer` rows.
pub fn parse_containment(text: &str, path: &str) -> Result<Containment, IoError> {
    let mut facts = Vec::new();
    for (line, r) in rows(text, path, 2)? {
        facts.push((iri(&r[0], path, line)?, iri(&r[1], path, line)?));
    }
    Ok(Containment::from_facts(facts))
}

/// `entity,inverse` rows; the inverse may be `!drop`. Starts from an empty
/// map.
pub fn parse_inverse_map(text: &str, path: &str) -> Result<InverseCauseMap, IoError> {
    let mut m = InverseCauseMap::empty();
    for (line, r) in rows(text, path, 2)? {
        let e = iri(&r[0], path, line)?;
        let image = if r[1] == DROP_TOKEN {
            InverseCause::Drop
        } else {
            InverseCause::To(iri(&r[1], path, line)?)
        };
        m.insert(e, image);
    }
    Ok(m)
}

/// `qualifier,category,role` rows layered over `base`.
pub fn parse_category_map(
    text: &str,
    path: &str,
    mut base: CategoryMap,
) -> Result<CategoryMap, IoError> {
    for (line, r) in rows(text, path, 3)? {
        let q = iri(&r[0], path, line)?;
        let perr = |message: String| IoError::Parse {
            path: path.to_string(),
            line,
            message,
        };
        let cat =
            Category::parse(&r[1]).ok_or_else(|| perr(format!("unknown category `{}`", r[1])))?;
        let role = Role::parse(&r[2]).ok_or_else(|| perr(format!("unknown role `{}`", r[2])))?;
        base.set(q, cat, role).map_err(perr)?;
    }
    Ok(base)
}

fn read(path: &std::path::Path) -> Result<(String, String), IoError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: p.clone(),
        source,
    })?;
    Ok((text, p))
}

pub fn load_containment(path: &std::path::Path) -> Result<Containment, IoError> {
    let (t, p) = read(path)?;
    parse_containment(&t, &p)
}

pub fn load_inverse_map(path: &std::path::Path) -> Result<InverseCauseMap, IoError> {
    let (t, p) = read(path)?;
    parse_inverse_map(&t, &p)
}

pub fn load_category_map(path: &std::path::Path) -> Result<CategoryMap, IoError> {
    let (t, p) = read(path)?;
    parse_category_map(&t, &p, CategoryMap::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn containment_with_header_and_comments() {
        let c = parse_containment(
            "inner,outer\n# US states\nwd:Q1384,wd:Q30\nwd:Q60, wd:Q1384\n",
            "c.csv",
        )
        .unwrap();
        assert!(c.region_inside(&Iri::wd("Q60"), &Iri::wd("Q30")).unwrap());
    }

    #[test]
    fn inverse_map_drop() {
        let m = parse_inverse_map("wd:Q1,wd:Q2\nwd:Q2,wd:Q1\nwd:Q3,!drop\n", "m.csv").unwrap();
        assert_eq!(m.invert(&Iri::wd("Q1")), Some(Iri::wd("Q2")));
        assert_eq!(m.invert(&Iri::wd("Q3")), None);
    }

    #[test]
    fn category_override_and_bad_role() {
        let m = parse_category_map(
            "pq:P9,causality,causeEnd\n",
            "k.csv",
            CategoryMap::default(),
        )
        .unwrap();
        assert_eq!(m.categorize(&Iri::wd("P9")).0, Category::Causality);
        let e = parse_category_map("wd:P9\tx\n", "k.csv", CategoryMap::default());
        assert!(e.is_err());
        let e = parse_category_map(
            "wd:P9,causality,timeStart\n",
            "k.csv",
            CategoryMap::default(),
        )
        .unwrap_err();
        assert!(matches!(e, IoError::Parse { line: 1, .. }), "{e}");
    }

    #[test]
    fn wrong_width() {
        assert!(matches!(
            parse_containment("wd:Q1\n", "c.csv"),
            Err(IoError::Parse { line: 1, .. })
        ));
    }
}
