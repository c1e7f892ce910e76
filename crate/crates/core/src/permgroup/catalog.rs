//! Fixture catalog of permutation groups.
//!
//! One group per line, `name: generator, generator, ...`, where each
//! generator is a product of cycles in 1-based cycle notation such as
//! `(1 2 3)(4 5)`; `()` is the identity. Points inside a cycle may be
//! separated by spaces or commas. Blank lines and `#` comments are ignored.
//! The degree of a group is the largest point named on its line. Group
//! names may themselves contain `:`; the generator list follows the last one.

use super::{PermError, PermGroup, Permutation, DEFAULT_ELEMENT_CAP};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: PermGroup,
}

/// Built-in fixtures: every group has order at most 200.
pub const BUILTIN_CATALOG: &str = "\
# name: generators
C1: ()
C2: (1 2)
C3: (1 2 3)
C4: (1 2 3 4)
V4: (1 2)(3 4), (1 3)(2 4)
C5: (1 2 3 4 5)
S3: (1 2), (1 2 3)
C6: (1 2 3 4 5 6)
C7: (1 2 3 4 5 6 7)
D8: (1 2 3 4), (1 3)
Q8: (1 2 3 4)(5 6 7 8), (1 5 3 7)(2 8 4 6)
C2^3: (1 2), (3 4), (5 6)
C3xC3: (1 2 3), (4 5 6)
D10: (1 2 3 4 5), (2 5)(3 4)
A4: (1 2 3), (1 2)(3 4)
D12: (1 2 3 4 5 6), (2 6)(3 5)
C2xC6: (1 2), (3 4), (5 6 7)
D14: (1 2 3 4 5 6 7), (2 7)(3 6)(4 5)
C15: (1 2 3)(4 5 6 7 8)
C3xS3: (1 2 3), (4 5 6), (4 5)
(C3xC3):C2: (1 2 3), (4 5 6), (2 3)(5 6)
F20: (1 2 3 4 5), (2 3 5 4)
F21: (1 2 3 4 5 6 7), (2 3 5)(4 7 6)
S4: (1 2 3 4), (1 2)
A4xC2: (1 2 3), (1 2)(3 4), (5 6)
S3xS3: (1 2 3), (1 2), (4 5 6), (4 5)
C13:C3: (1 2 3 4 5 6 7 8 9 10 11 12 13), (2 4 10)(3 7 6)(5 13 11)(8 9 12)
F42: (1 2 3 4 5 6 7), (2 4 3 7 5 6)
C11:C5: (1 2 3 4 5 6 7 8 9 10 11), (2 4 10 6 5)(3 7 8 11 9)
A5: (1 2 3 4 5), (1 2 3)
S5: (1 2 3 4 5), (1 2)
PSL(3,2): (1 2 3 4 5 6 7), (3 5)(6 7)
";

pub fn builtin_catalog() -> Vec<CatalogEntry> {
    parse_catalog(BUILTIN_CATALOG).expect("built-in catalog is well formed")
}

/// Parses and closes every group of a catalog file.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>, PermError> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let err = |column: usize, message: String| PermError::Parse { line: lineno + 1, column, message };
        // names may contain ':'; cycle syntax never does
        let Some(colon) = line.rfind(':') else {
            return Err(err(1, "expected `name: generators`".into()));
        };
        let name = line[..colon].trim();
        if name.is_empty() {
            return Err(err(1, "missing group name".into()));
        }
        let cycles = parse_generators(&line[colon + 1..], colon + 2).map_err(|(c, m)| err(c, m))?;
        let degree = cycles.iter().flatten().flatten().map(|&p| p + 1).max().unwrap_or(1);
        let gens = cycles
            .iter()
            .map(|c| Permutation::from_cycles(degree, c))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| err(colon + 2, e.to_string()))?;
        let group = PermGroup::close(degree, gens, DEFAULT_ELEMENT_CAP)?;
        out.push(CatalogEntry { name: name.to_string(), group });
    }
    Ok(out)
}

type Cycles = Vec<Vec<usize>>;

/// Splits `a, b, c` into generators, each a list of 0-based cycles.
fn parse_generators(s: &str, col0: usize) -> Result<Vec<Cycles>, (usize, String)> {
    let chars: Vec<char> = s.chars().collect();
    let mut gens = Vec::new();
    let mut current: Cycles = Vec::new();
    let mut seen_cycle = false;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            ',' => {
                if !seen_cycle {
                    return Err((col0 + i, "empty generator".into()));
                }
                gens.push(std::mem::take(&mut current));
                seen_cycle = false;
                i += 1;
            }
            '(' => {
                let close = chars[i..]
                    .iter()
                    .position(|&c| c == ')')
                    .map(|k| i + k)
                    .ok_or((col0 + i, "unclosed cycle".to_string()))?;
                let body: String = chars[i + 1..close].iter().collect();
                let mut cycle = Vec::new();
                for tok in body.split([' ', ',']).filter(|t| !t.is_empty()) {
                    match tok.parse::<usize>() {
                        Ok(p) if p >= 1 => cycle.push(p - 1),
                        _ => return Err((col0 + i + 1, format!("bad point `{tok}`"))),
                    }
                }
                let mut sorted = cycle.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != cycle.len() {
                    return Err((col0 + i, "point repeated inside a cycle".into()));
                }
                if cycle.len() > 1 {
                    current.push(cycle);
                }
                seen_cycle = true;
                i = close + 1;
            }
            _ => return Err((col0 + i, format!("unexpected `{c}`"))),
        }
    }
    if !seen_cycle {
        return Err((col0 + chars.len(), "expected at least one generator".into()));
    }
    gens.push(current);
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        let cat = builtin_catalog();
        let orders: Vec<(&str, usize)> = cat.iter().map(|e| (e.name.as_str(), e.group.order())).collect();
        let expect = [
            ("C1", 1), ("C2", 2), ("C3", 3), ("C4", 4), ("V4", 4), ("C5", 5), ("S3", 6), ("C6", 6),
            ("C7", 7), ("D8", 8), ("Q8", 8), ("C2^3", 8), ("C3xC3", 9), ("D10", 10), ("A4", 12),
            ("D12", 12), ("C2xC6", 12), ("D14", 14), ("C15", 15), ("C3xS3", 18), ("(C3xC3):C2", 18),
            ("F20", 20), ("F21", 21), ("S4", 24), ("A4xC2", 24), ("S3xS3", 36), ("C13:C3", 39),
            ("F42", 42), ("C11:C5", 55), ("A5", 60), ("S5", 120), ("PSL(3,2)", 168),
        ];
        assert_eq!(orders, expect);
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_catalog("G: (1 2)\nH: (1 2 1)") {
            Err(PermError::Parse { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_catalog("G: (1 2)(2 3)"), Err(PermError::Parse { line: 1, .. })));
        assert!(matches!(parse_catalog("G: (1 2"), Err(PermError::Parse { .. })));
        assert!(matches!(parse_catalog("G (1 2)"), Err(PermError::Parse { .. })));
        assert!(matches!(parse_catalog("G: (0 1)"), Err(PermError::Parse { .. })));
        assert!(matches!(parse_catalog("G: (1 2),"), Err(PermError::Parse { .. })));
    }

    #[test]
    fn commas_inside_cycles() {
        let cat = parse_catalog("A4: (1,2,3), (1,2)(3,4)\n# comment\n\n").unwrap();
        assert_eq!(cat.len(), 1);
        assert_eq!(cat[0].group.order(), 12);
    }
}
