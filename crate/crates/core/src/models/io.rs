//! Text formats: model descriptions and solution exports.
//!
//! A model file is line oriented; `#` starts a comment and blank lines are
//! ignored.
//!
//! ```text
//! group 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! names 1 g g^2        # optional
//! module 7 1           # modulus, rank
//! 1                    # one row-major matrix per group element
//! 2
//! 4
//! pair                 # optional
//! u y^-1
//! v y x y
//! ```
//!
//! An export starts with `ybe-ext v1 |G|=<n> m=<m> k=<k>` followed by one line
//! per input pair in lexicographic order:
//! `g1 vec1 g2 vec2 -> g1' vec1' g2' vec2'`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::wada::{PairError, WadaPair};

use super::group::{validate_group, FiniteGroup, GroupError};
use super::module::{validate_module, GModule, ModuleError};
use super::solution::{Carrier, ExtendedSolution, SolutionError, SquareMap};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing {0} section")]
    MissingSection(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("line {line}: {source}")]
    Pair { line: usize, source: PairError },
    #[error(transparent)]
    Solution(#[from] SolutionError),
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct ModelFile {
    pub group: FiniteGroup,
    pub module: GModule,
    pub pair: Option<WadaPair>,
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn numbers<T: std::str::FromStr>(line: usize, text: &str) -> Result<Vec<T>, FormatError> {
    text.split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| syntax(line, format!("expected an integer, got {t:?}")))
        })
        .collect()
}

pub fn parse_model(text: &str) -> Result<ModelFile, FormatError> {
    let mut lines = content_lines(text).peekable();
    let mut group: Option<FiniteGroup> = None;
    let mut module: Option<GModule> = None;
    let mut pair: Option<WadaPair> = None;

    while let Some((ln, line)) = lines.next() {
        let mut head = line.split_whitespace();
        match head.next() {
            Some("group") => {
                let order: usize = match numbers::<usize>(ln, &line[5..])?.as_slice() {
                    [n] => *n,
                    _ => return Err(syntax(ln, "expected `group <order>`")),
                };
                let mut rows = Vec::with_capacity(order);
                for _ in 0..order {
                    let (ln, row) = lines
                        .next()
                        .ok_or_else(|| syntax(ln, "group table ends early"))?;
                    rows.push(numbers(ln, row)?);
                }
                let mut g = validate_group(&rows)?;
                if let Some(&(ln, l)) = lines.peek() {
                    if let Some(names) = l.strip_prefix("names") {
                        lines.next();
                        g = g
                            .with_names(names.split_whitespace())
                            .map_err(|e| syntax(ln, e.to_string()))?;
                    }
                }
                group = Some(g);
            }
            Some("module") => {
                let g = group
                    .as_ref()
                    .ok_or_else(|| syntax(ln, "module section before group section"))?;
                let (modulus, rank) = match numbers::<u64>(ln, &line[6..])?.as_slice() {
                    [m, k] => (*m, *k as usize),
                    _ => return Err(syntax(ln, "expected `module <modulus> <rank>`")),
                };
                let mut matrices = Vec::with_capacity(g.order());
                for _ in 0..g.order() {
                    let (ln, row) = lines
                        .next()
                        .ok_or_else(|| syntax(ln, "module matrices end early"))?;
                    matrices.push(numbers(ln, row)?);
                }
                module = Some(validate_module(g, modulus, rank, &matrices)?);
            }
            Some("pair") => {
                let mut u = None;
                let mut v = None;
                for _ in 0..2 {
                    let (ln, l) = lines.next().ok_or_else(|| {
                        syntax(ln, "pair section needs `u <word>` and `v <word>`")
                    })?;
                    match l.split_once(char::is_whitespace) {
                        Some(("u", w)) => u = Some(w.trim().to_string()),
                        Some(("v", w)) => v = Some(w.trim().to_string()),
                        _ if l == "u" => u = Some(String::new()),
                        _ if l == "v" => v = Some(String::new()),
                        _ => return Err(syntax(ln, "expected `u <word>` or `v <word>`")),
                    }
                }
                let (u, v) = u
                    .zip(v)
                    .ok_or_else(|| syntax(ln, "pair section needs both u and v"))?;
                pair = Some(
                    WadaPair::parse(&u, &v)
                        .map_err(|source| FormatError::Pair { line: ln, source })?,
                );
            }
            _ => return Err(syntax(ln, format!("unexpected line {line:?}"))),
        }
    }
    Ok(ModelFile {
        group: group.ok_or(FormatError::MissingSection("group"))?,
        module: module.ok_or(FormatError::MissingSection("module"))?,
        pair,
    })
}

/// Renders a model in the format read by [`parse_model`].
pub fn render_model(group: &FiniteGroup, module: &GModule, pair: Option<&WadaPair>) -> String {
    let mut out = format!("group {}\n", group.order());
    for row in group.rows() {
        out.push_str(&join(&row));
        out.push('\n');
    }
    if let Some(names) = group.names() {
        let _ = writeln!(out, "names {}", names.join(" "));
    }
    let _ = writeln!(out, "module {} {}", module.modulus(), module.rank());
    for g in 0..group.order() {
        out.push_str(&join(module.action(g)));
        out.push('\n');
    }
    if let Some(p) = pair {
        let _ = writeln!(out, "pair\nu {}\nv {}", p.u, p.v);
    }
    out
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// An export read back from text: the carrier shape and the table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportedTable {
    pub carrier: Carrier,
    pub map: SquareMap,
}

pub fn export_header(carrier: &Carrier) -> String {
    format!(
        "ybe-ext v1 |G|={} m={} k={}",
        carrier.order, carrier.modulus, carrier.rank
    )
}

/// Bit-exact export of the table.
pub fn export_solution(sol: &ExtendedSolution) -> String {
    export_table(&sol.carrier, &sol.map)
}

pub fn export_table(carrier: &Carrier, map: &SquareMap) -> String {
    let n = carrier.size();
    let points: Vec<String> = (0..n)
        .map(|i| {
            let p = carrier.decode(i);
            let mut s = p.g.to_string();
            for x in &p.vec {
                let _ = write!(s, " {x}");
            }
            s
        })
        .collect();
    let mut out = String::with_capacity(n * n * (4 * carrier.rank + 12));
    out.push_str(&export_header(carrier));
    out.push('\n');
    for a in 0..n {
        for b in 0..n {
            let (c, d) = map.apply(a, b);
            let _ = writeln!(
                out,
                "{} {} -> {} {}",
                points[a], points[b], points[c], points[d]
            );
        }
    }
    out
}

fn parse_header(line: &str) -> Option<Carrier> {
    let rest = line.strip_prefix("ybe-ext v1 ")?;
    let mut parts = rest.split(' ');
    let order = parts.next()?.strip_prefix("|G|=")?.parse().ok()?;
    let modulus = parts.next()?.strip_prefix("m=")?.parse().ok()?;
    let rank = parts.next()?.strip_prefix("k=")?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some(Carrier {
        order,
        modulus,
        rank,
    })
}

/// Reads an export. Lines must list every input pair exactly once, in
/// lexicographic order.
pub fn parse_export(text: &str) -> Result<ExportedTable, FormatError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| syntax(1, "empty export"))?;
    let shape = parse_header(header)
        .filter(|c| c.order > 0 && c.modulus >= 2 && c.rank > 0)
        .ok_or_else(|| syntax(1, "expected header `ybe-ext v1 |G|=<n> m=<m> k=<k>`"))?;
    let carrier = Carrier::new(shape.order, shape.modulus, shape.rank)?;
    let n = carrier.size();
    let width = 1 + carrier.rank;

    let read_point = |ln: usize, fields: &[u64]| -> Result<usize, FormatError> {
        let g = fields[0] as usize;
        if g >= carrier.order {
            return Err(syntax(ln, format!("group index {g} out of range")));
        }
        if let Some(x) = fields[1..].iter().find(|&&x| x >= carrier.modulus) {
            return Err(syntax(ln, format!("vector entry {x} out of range")));
        }
        Ok(carrier.encode(g, &fields[1..]))
    };

    let mut table = Vec::with_capacity(n * n);
    for expected in 0..n * n {
        let (ln, line) = lines.next().ok_or_else(|| {
            syntax(
                0,
                format!("export ends after {expected} of {} lines", n * n),
            )
        })?;
        let (input, output) = line
            .split_once(" -> ")
            .ok_or_else(|| syntax(ln, "expected `<input> -> <output>`"))?;
        let input: Vec<u64> = numbers(ln, input)?;
        let output: Vec<u64> = numbers(ln, output)?;
        if input.len() != 2 * width || output.len() != 2 * width {
            return Err(syntax(
                ln,
                format!("expected {} integers on each side", 2 * width),
            ));
        }
        let (a, b) = (
            read_point(ln, &input[..width])?,
            read_point(ln, &input[width..])?,
        );
        if (a, b) != (expected / n, expected % n) {
            return Err(syntax(
                ln,
                "input pairs must appear once each in lexicographic order",
            ));
        }
        table.push((
            read_point(ln, &output[..width])?,
            read_point(ln, &output[width..])?,
        ));
    }
    if let Some((ln, extra)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(syntax(ln, format!("unexpected trailing line {extra:?}")));
    }
    let map = SquareMap::from_fn(n, |a, b| table[a * n + b]);
    Ok(ExportedTable { carrier, map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::presets::parse_preset;
    use crate::models::solution::extended_solution;

    const C3_MODEL: &str = "\
# C3 acting on Z/7 by doubling
group 3
0 1 2
1 2 0
2 0 1
names 1 g g^2
module 7 1
1
2
4
pair
u y^-1
v y x y
";

    #[test]
    fn model_round_trip() {
        let m = parse_model(C3_MODEL).unwrap();
        assert_eq!(m.group.order(), 3);
        assert_eq!(m.group.name(2), "g^2");
        assert_eq!(m.module.action(1), &vec![2]);
        let pair = m.pair.clone().unwrap();
        assert_eq!(pair.to_string(), "y^-1,yxy");
        let text = render_model(&m.group, &m.module, Some(&pair));
        let again = parse_model(&text).unwrap();
        assert_eq!(again.group, m.group);
        assert_eq!(again.module, m.module);
        assert_eq!(again.pair, m.pair);
    }

    #[test]
    fn model_errors() {
        assert_eq!(
            parse_model("module 7 1\n1\n").unwrap_err(),
            syntax(1, "module section before group section")
        );
        assert_eq!(
            parse_model("group 1\n0\n").unwrap_err(),
            FormatError::MissingSection("module")
        );
        assert!(matches!(
            parse_model("group 2\n0 1\n1 1\nmodule 3 1\n1\n1\n"),
            Err(FormatError::Group(GroupError::NoInverse { element: 1 }))
        ));
        assert!(matches!(
            parse_model("group 1\n0\nmodule 3 1\n2\n"),
            Err(FormatError::Module(ModuleError::IdentityNotTrivial { .. }))
        ));
        assert!(matches!(
            parse_model("group 1\n0\nmodule 3 1\n1\npair\nu q\nv x\n"),
            Err(FormatError::Pair { line: 5, .. })
        ));
        assert!(matches!(
            parse_model("group 1\nx\n"),
            Err(FormatError::Syntax { line: 2, .. })
        ));
    }

    #[test]
    fn export_format_is_exact() {
        let (g, v) = parse_preset("C3:Z7x2").unwrap();
        let p = WadaPair::parse("y^-1", "yxy").unwrap();
        let sol = extended_solution(&p, &g, &v, "C3:Z7x2").unwrap();
        let text = export_solution(&sol);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("ybe-ext v1 |G|=3 m=7 k=1"));
        // R((1,0),(1,0)) = ((1, 0), (1, 0)) since every coefficient acts on zero
        assert_eq!(lines.next(), Some("0 0 0 0 -> 0 0 0 0"));
        assert_eq!(text.lines().count(), 1 + 21 * 21);

        let back = parse_export(&text).unwrap();
        assert_eq!(back.carrier, sol.carrier);
        assert_eq!(back.map, sol.map);
    }

    #[test]
    fn export_rejects_reordering_and_garbage() {
        let carrier = Carrier::new(1, 2, 1).unwrap();
        let text = export_table(&carrier, &SquareMap::flip(2));
        assert_eq!(
            text,
            "ybe-ext v1 |G|=1 m=2 k=1\n0 0 0 0 -> 0 0 0 0\n0 0 0 1 -> 0 1 0 0\n0 1 0 0 -> 0 0 0 1\n0 1 0 1 -> 0 1 0 1\n"
        );
        let swapped = text.replace(
            "0 0 0 1 -> 0 1 0 0\n0 1 0 0 -> 0 0 0 1",
            "0 1 0 0 -> 0 0 0 1\n0 0 0 1 -> 0 1 0 0",
        );
        assert!(matches!(
            parse_export(&swapped),
            Err(FormatError::Syntax { line: 3, .. })
        ));
        assert!(parse_export("ybe-ext v2 |G|=1 m=2 k=1\n").is_err());
        let bad_entry = text.replace("0 1 0 1 -> 0 1 0 1", "0 1 0 1 -> 0 1 0 2");
        assert!(matches!(
            parse_export(&bad_entry),
            Err(FormatError::Syntax { line: 5, .. })
        ));
        let truncated: String = text.lines().take(3).map(|l| format!("{l}\n")).collect();
        assert!(parse_export(&truncated).is_err());
        assert!(parse_export(&format!("{text}junk\n")).is_err());
    }
}
