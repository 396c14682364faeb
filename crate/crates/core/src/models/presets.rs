//! Named groups and modules for self-contained runs.
//!
//! A preset name is `<group>:<module>`:
//!
//! * groups: `C<n>` (cyclic), `S3`, `D4` (symmetries of a square);
//! * modules over `ℤ/m`: `Z<m>x<c>` (cyclic groups only, generator acts by
//!   `×c`), `Z<m>triv`, `Z<m>sign` (sign character), `Z<m>std` (rank-2
//!   reflection representation of `S3` or `D4`).
//!
//! For example `C3:Z7x2` or `S3:Z7sign`.

use thiserror::Error;

use super::group::{FiniteGroup, GroupError};
use super::module::{identity_matrix, validate_module, GModule, ModuleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresetError {
    #[error("preset {0:?} is not of the form <group>:<module>")]
    Syntax(String),
    #[error("unknown group preset {0:?} (expected C<n>, S3 or D4)")]
    UnknownGroup(String),
    #[error("unknown module preset {0:?} (expected Z<m>x<c>, Z<m>triv, Z<m>sign or Z<m>std)")]
    UnknownModule(String),
    #[error("module {module:?} is not available for group {group:?}")]
    Unsupported { group: String, module: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Module(#[from] ModuleError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum GroupKind {
    Cyclic(usize),
    Symmetric3,
    Dihedral4,
}

/// Cyclic group of order `n`; element `j` is `g^j`.
pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    let rows: Vec<Vec<usize>> = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let names = (0..n).map(|j| match j {
        0 => "1".to_string(),
        1 => "g".to_string(),
        _ => format!("g^{j}"),
    });
    FiniteGroup::from_table(&rows)?.with_names(names)
}

const S3_ELEMENTS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [1, 0, 2],
    [2, 1, 0],
    [0, 2, 1],
    [1, 2, 0],
    [2, 0, 1],
];

fn cycle_notation(p: &[usize; 3]) -> String {
    let mut seen = [false; 3];
    let mut out = String::new();
    for start in 0..3 {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            out.push_str(&(i + 1).to_string());
            i = p[i];
        }
        out.push(')');
    }
    if out.is_empty() {
        "1".to_string()
    } else {
        out
    }
}

/// Symmetric group on `{1, 2, 3}`, elements named in cycle notation.
/// The product `στ` applies `τ` first.
pub fn symmetric3() -> FiniteGroup {
    FiniteGroup::from_elements(&S3_ELEMENTS, |a, b| [a[b[0]], a[b[1]], a[b[2]]])
        .and_then(|g| g.with_names(S3_ELEMENTS.iter().map(cycle_notation)))
        .expect("S3 table")
}

type IntMatrix2 = [i64; 4];

fn mul2(a: &IntMatrix2, b: &IntMatrix2) -> IntMatrix2 {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn d4_elements() -> Vec<IntMatrix2> {
    let r = [0, -1, 1, 0];
    let s = [1, 0, 0, -1];
    let mut rot = vec![[1, 0, 0, 1]];
    for i in 1..4 {
        rot.push(mul2(&rot[i - 1], &r));
    }
    let refl: Vec<IntMatrix2> = rot.iter().map(|p| mul2(&s, p)).collect();
    rot.into_iter().chain(refl).collect()
}

/// Dihedral group of order 8 as signed 2×2 permutation matrices:
/// `r^i` then `s r^i`.
pub fn dihedral4() -> FiniteGroup {
    let names = ["1", "r", "r^2", "r^3", "s", "sr", "sr^2", "sr^3"];
    FiniteGroup::from_elements(&d4_elements(), mul2)
        .and_then(|g| g.with_names(names))
        .expect("D4 table")
}

fn s3_sign(p: &[usize; 3]) -> i64 {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Action on the sum-zero sublattice of `ℤ³` in the basis `e1-e2, e2-e3`.
fn s3_standard(p: &[usize; 3]) -> Vec<i64> {
    let image = |i: usize, j: usize| {
        let mut v = [0i64; 3];
        v[p[i]] += 1;
        v[p[j]] -= 1;
        // coordinates of a sum-zero vector (c1, c2, c3) = c1 b1 + (c1 + c2) b2
        [v[0], v[0] + v[1]]
    };
    let c1 = image(0, 1);
    let c2 = image(1, 2);
    vec![c1[0], c2[0], c1[1], c2[1]]
}

/// `Z/m` with generator `g^j` acting by `c^j`.
pub fn cyclic_scalar_module(
    group: &FiniteGroup,
    modulus: u64,
    c: i64,
) -> Result<GModule, ModuleError> {
    let m = modulus as i64;
    let mut p = 1i64;
    let mut matrices = Vec::with_capacity(group.order());
    for _ in 0..group.order() {
        matrices.push(vec![p]);
        p = (p * c).rem_euclid(m.max(1));
    }
    validate_module(group, modulus, 1, &matrices)
}

pub fn trivial_module(
    group: &FiniteGroup,
    modulus: u64,
    rank: usize,
) -> Result<GModule, ModuleError> {
    let id: Vec<i64> = identity_matrix(rank)
        .into_iter()
        .map(|x| x as i64)
        .collect();
    validate_module(group, modulus, rank, &vec![id; group.order()])
}

fn parse_group(text: &str) -> Result<(GroupKind, FiniteGroup), PresetError> {
    match text {
        "S3" => Ok((GroupKind::Symmetric3, symmetric3())),
        "D4" => Ok((GroupKind::Dihedral4, dihedral4())),
        _ => {
            let n: usize = text
                .strip_prefix('C')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| PresetError::UnknownGroup(text.to_string()))?;
            Ok((GroupKind::Cyclic(n), cyclic(n)?))
        }
    }
}

/// Builds a `(group, module)` pair from a preset name such as `C3:Z7x2`.
pub fn parse_preset(name: &str) -> Result<(FiniteGroup, GModule), PresetError> {
    let (g_text, m_text) = name
        .split_once(':')
        .ok_or_else(|| PresetError::Syntax(name.to_string()))?;
    let (kind, group) = parse_group(g_text)?;

    let unknown = || PresetError::UnknownModule(m_text.to_string());
    let rest = m_text.strip_prefix('Z').ok_or_else(unknown)?;
    let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
    let modulus: u64 = rest[..digits].parse().map_err(|_| unknown())?;
    let suffix = &rest[digits..];
    let unsupported = || PresetError::Unsupported {
        group: g_text.to_string(),
        module: m_text.to_string(),
    };

    let module = match (suffix, kind) {
        ("triv", _) => trivial_module(&group, modulus, 1)?,
        ("sign", GroupKind::Symmetric3) => {
            let m: Vec<Vec<i64>> = S3_ELEMENTS.iter().map(|p| vec![s3_sign(p)]).collect();
            validate_module(&group, modulus, 1, &m)?
        }
        ("sign", GroupKind::Dihedral4) => {
            let m: Vec<Vec<i64>> = d4_elements()
                .iter()
                .map(|a| vec![a[0] * a[3] - a[1] * a[2]])
                .collect();
            validate_module(&group, modulus, 1, &m)?
        }
        ("sign", GroupKind::Cyclic(n)) if n % 2 == 0 => cyclic_scalar_module(&group, modulus, -1)?,
        ("std", GroupKind::Symmetric3) => {
            let m: Vec<Vec<i64>> = S3_ELEMENTS.iter().map(s3_standard).collect();
            validate_module(&group, modulus, 2, &m)?
        }
        ("std", GroupKind::Dihedral4) => {
            let m: Vec<Vec<i64>> = d4_elements().iter().map(|a| a.to_vec()).collect();
            validate_module(&group, modulus, 2, &m)?
        }
        (s, GroupKind::Cyclic(_)) if s.starts_with('x') => {
            let c: i64 = s[1..].parse().map_err(|_| unknown())?;
            cyclic_scalar_module(&group, modulus, c)?
        }
        ("sign" | "std", _) => return Err(unsupported()),
        (s, _) if s.starts_with('x') => return Err(unsupported()),
        _ => return Err(unknown()),
    };
    Ok((group, module))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_names_and_structure() {
        let g = symmetric3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(g.identity()), "1");
        let t = g.index_of("(12)").unwrap();
        let r = g.index_of("(123)").unwrap();
        assert_eq!(g.mul(t, t), g.identity());
        assert_eq!(g.mul(r, g.mul(r, r)), g.identity());
        assert_eq!(g.inv(r), g.index_of("(132)").unwrap());
    }

    #[test]
    fn d4_structure() {
        let g = dihedral4();
        assert_eq!(g.order(), 8);
        let r = g.index_of("r").unwrap();
        let s = g.index_of("s").unwrap();
        assert_eq!(g.mul(s, r), g.index_of("sr").unwrap());
        // s r s = r^-1
        assert_eq!(g.mul(g.mul(s, r), s), g.inv(r));
    }

    #[test]
    fn presets_parse() {
        let (g, v) = parse_preset("C3:Z7x2").unwrap();
        assert_eq!((g.order(), v.modulus(), v.rank()), (3, 7, 1));
        let (g, v) = parse_preset("S3:Z7sign").unwrap();
        assert_eq!(
            (g.order(), v.action(g.index_of("(12)").unwrap())),
            (6, &vec![6])
        );
        let (_, v) = parse_preset("S3:Z5std").unwrap();
        assert_eq!(v.rank(), 2);
        let (_, v) = parse_preset("D4:Z3std").unwrap();
        assert_eq!(v.rank(), 2);
        parse_preset("D4:Z7sign").unwrap();
        parse_preset("C4:Z5sign").unwrap();
        parse_preset("C1:Z2triv").unwrap();
    }

    #[test]
    fn preset_errors() {
        assert!(matches!(parse_preset("C3"), Err(PresetError::Syntax(_))));
        assert!(matches!(
            parse_preset("Q8:Z7triv"),
            Err(PresetError::UnknownGroup(_))
        ));
        assert!(matches!(
            parse_preset("C3:Y7"),
            Err(PresetError::UnknownModule(_))
        ));
        assert!(matches!(
            parse_preset("C3:Z7std"),
            Err(PresetError::Unsupported { .. })
        ));
        assert!(matches!(
            parse_preset("S3:Z7x2"),
            Err(PresetError::Unsupported { .. })
        ));
        assert!(matches!(
            parse_preset("C3:Z7x3"),
            Err(PresetError::Module(ModuleError::NotHomomorphism { .. }))
        ));
        assert!(matches!(
            parse_preset("C3:Z1triv"),
            Err(PresetError::Module(_))
        ));
    }
}
