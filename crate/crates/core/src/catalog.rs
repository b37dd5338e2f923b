//! Built-in Hopf algebras: group algebras of cyclic groups, their duals,
//! Sweedler's four-dimensional algebra and the Taft algebras.

use std::fmt;

use crate::algebra::{dual_unchecked, AlgebraData, CoalgebraData, HopfAlgebraData, StructureTable};
use crate::error::{Error, Result};
use crate::linalg::{Accumulator, LinearMap, SparseVec};
use crate::scalar::{FieldSpec, Fp, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    Cyclic { n: usize },
    DualCyclic { n: usize },
    Sweedler4,
    Taft { n: usize, p: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogSpec {
    pub name: CatalogName,
    pub field: FieldSpec,
}

impl CatalogSpec {
    /// `cyclic:N`, `dual_cyclic:N`, `sweedler4`, optionally suffixed `@Q` or
    /// `@P` for a prime P; `taft:N:P` is always over 𝔽_P.
    pub fn parse(s: &str) -> Result<Self> {
        let (body, field) = match s.split_once('@') {
            Some((b, "Q")) => (b, Some(FieldSpec::Rationals)),
            Some((b, f)) => {
                let p = f.parse().map_err(|_| Error::Parse(format!("bad field suffix {f:?}")))?;
                (b, Some(FieldSpec::prime(p)?))
            }
            None => (s, None),
        };
        let parts: Vec<&str> = body.split(':').collect();
        let num = |i: usize| -> Result<usize> {
            parts
                .get(i)
                .ok_or_else(|| Error::Parse(format!("missing parameter in {s:?}")))?
                .parse()
                .map_err(|_| Error::Parse(format!("bad parameter in {s:?}")))
        };
        let name = match (parts[0], parts.len()) {
            ("cyclic", 2) => CatalogName::Cyclic { n: num(1)? },
            ("dual_cyclic", 2) => CatalogName::DualCyclic { n: num(1)? },
            ("sweedler4", 1) => CatalogName::Sweedler4,
            ("taft", 3) => {
                if field.is_some() {
                    return Err(Error::Parse("taft:N:P fixes its own field".into()));
                }
                let p = num(2)?;
                CatalogName::Taft { n: num(1)?, p: u32::try_from(p).map_err(|_| Error::Parse("prime too large".into()))? }
            }
            _ => return Err(Error::Parse(format!("unknown catalog entry {s:?}"))),
        };
        let field = match name {
            CatalogName::Taft { p, .. } => FieldSpec::prime(p)?,
            _ => field.unwrap_or(FieldSpec::Rationals),
        };
        Ok(CatalogSpec { name, field })
    }
}

impl fmt::Display for CatalogSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let suffix = match self.field {
            FieldSpec::Rationals => String::new(),
            FieldSpec::PrimeField(p) => format!("@{p}"),
        };
        match self.name {
            CatalogName::Cyclic { n } => write!(f, "cyclic:{n}{suffix}"),
            CatalogName::DualCyclic { n } => write!(f, "dual_cyclic:{n}{suffix}"),
            CatalogName::Sweedler4 => write!(f, "sweedler4{suffix}"),
            CatalogName::Taft { n, p } => write!(f, "taft:{n}:{p}"),
        }
    }
}

pub fn catalog_hopf(spec: &CatalogSpec) -> Result<HopfAlgebraData> {
    match spec.name {
        CatalogName::Cyclic { n } => cyclic(n, spec.field),
        CatalogName::DualCyclic { n } => Ok(dual_unchecked(&cyclic(n, spec.field)?)),
        CatalogName::Sweedler4 => {
            if spec.field.characteristic() == 2 {
                return Err(Error::InvalidParameter("sweedler4 needs characteristic ≠ 2".into()));
            }
            Ok(taft_like(2, spec.field.from_i64(-1), spec.field))
        }
        CatalogName::Taft { n, p } => {
            let field = FieldSpec::prime(p)?;
            let omega = primitive_root_of_unity(n, p)?;
            Ok(taft_like(n, Scalar::Fp(omega), field))
        }
    }
}

fn power_label(g: &str, i: usize) -> String {
    match i {
        0 => String::new(),
        1 => g.to_string(),
        _ => format!("{g}^{i}"),
    }
}

/// Group algebra `k[ℤ/n]` with basis `g^i`.
pub fn cyclic(n: usize, field: FieldSpec) -> Result<HopfAlgebraData> {
    if n == 0 {
        return Err(Error::InvalidParameter("cyclic:n needs n ≥ 1".into()));
    }
    let labels: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { power_label("g", i) }).collect();
    let mult = StructureTable::from_triples(
        n,
        n,
        n,
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n, field.one()))),
    )?;
    let mut unit = vec![field.zero(); n];
    unit[0] = field.one();
    let algebra = AlgebraData::new(field, labels.clone(), mult, unit)?;
    let coalgebra = CoalgebraData::new(field, labels, (0..n).map(|i| (i, i, i, field.one())), vec![field.one(); n])?;
    let cols: Vec<SparseVec> = (0..n).map(|i| vec![((n - i) % n, field.one())]).collect();
    HopfAlgebraData::new(algebra, coalgebra, LinearMap::from_columns(field, n, &cols)?)
}

/// Smallest residue whose multiplicative order is exactly `n`.
pub fn primitive_root_of_unity(n: usize, p: u32) -> Result<Fp> {
    FieldSpec::prime(p)?;
    if n < 2 || !(p as usize - 1).is_multiple_of(n) {
        return Err(Error::InvalidParameter(format!("taft:{n}:{p} needs n ≥ 2 dividing p - 1")));
    }
    let order = |r: Fp| (1..=n as u64).find(|&k| r.pow(k).value() == 1);
    (2..p)
        .map(|r| Fp::new(r as i64, p))
        .find(|&r| order(r) == Some(n as u64))
        .ok_or_else(|| Error::InvalidParameter(format!("no primitive {n}-th root of unity mod {p}")))
}

/// `g^n = 1`, `x^n = 0`, `xg = ω gx`, `Δ(g) = g⊗g`, `Δ(x) = x⊗1 + g⊗x`.
/// Basis `g^i x^j` at index `j·n + i`.
fn taft_like(n: usize, omega: Scalar, field: FieldSpec) -> HopfAlgebraData {
    let dim = n * n;
    let idx = |i: usize, j: usize| j * n + i;
    let labels: Vec<String> = (0..dim)
        .map(|k| {
            let (i, j) = (k % n, k / n);
            let s = format!("{}{}", power_label("g", i), power_label("x", j));
            if s.is_empty() { "1".into() } else { s }
        })
        .collect();
    let mut omega_pow = vec![field.one()];
    for k in 1..n * n {
        let prev = omega_pow[k - 1].clone();
        omega_pow.push(&prev * &omega);
    }
    let mut triples = Vec::new();
    for (a, b) in (0..n).flat_map(|a| (0..n).map(move |b| (a, b))) {
        for (c, d) in (0..n).flat_map(|c| (0..n).map(move |d| (c, d))) {
            if b + d < n {
                // x^b g^c = ω^{bc} g^c x^b
                triples.push((idx(a, b), idx(c, d), idx((a + c) % n, b + d), omega_pow[b * c].clone()));
            }
        }
    }
    let mult = StructureTable::from_triples(dim, dim, dim, triples).expect("indices in range");
    let mut unit = vec![field.zero(); dim];
    unit[0] = field.one();
    let algebra = AlgebraData { field, labels: labels.clone(), mult, unit };

    let one = field.one();
    let mul = |x: &SparseVec, y: &SparseVec| algebra.mult.apply(x, y, &field);
    let tensor_mul = |u: &SparseVec, v: &SparseVec| -> SparseVec {
        let mut acc = Accumulator::new();
        for (p, a) in u {
            for (q, b) in v {
                let left = algebra.mult.get(p / dim, q / dim);
                let right = algebra.mult.get(p % dim, q % dim);
                for (k1, c1) in left {
                    for (k2, c2) in right {
                        acc.add(k1 * dim + k2, &(&(a * b) * c1) * c2);
                    }
                }
            }
        }
        acc.finish()
    };
    let g = idx(1 % n, 0);
    let x = idx(0, 1);
    let delta_g: SparseVec = vec![(g * dim + g, one.clone())];
    let mut delta_x = vec![(x * dim, one.clone()), (g * dim + x, one.clone())];
    delta_x.sort_by_key(|t| t.0);
    let g_inv = idx(n - 1, 0);
    let s_g: SparseVec = vec![(g_inv, one.clone())];
    let s_x: SparseVec = vec![(idx(n - 1, 1), -&one)];

    let mut comult_triples = Vec::new();
    let mut cols = Vec::with_capacity(dim);
    for k in 0..dim {
        let (i, j) = (k % n, k / n);
        let mut d: SparseVec = vec![(0, one.clone())];
        let mut s: SparseVec = vec![(0, one.clone())];
        for _ in 0..i {
            d = tensor_mul(&d, &delta_g);
        }
        for _ in 0..j {
            d = tensor_mul(&d, &delta_x);
        }
        // S is an anti-homomorphism: S(g^i x^j) = S(x)^j S(g)^i
        for _ in 0..j {
            s = mul(&s, &s_x);
        }
        for _ in 0..i {
            s = mul(&s, &s_g);
        }
        comult_triples.extend(d.into_iter().map(|(ab, c)| (k, ab / dim, ab % dim, c)));
        cols.push(s);
    }
    let counit = (0..dim).map(|k| if k < n { field.one() } else { field.zero() }).collect();
    let coalgebra = CoalgebraData::new(field, labels, comult_triples, counit).expect("indices in range");
    let antipode = LinearMap::from_columns(field, dim, &cols).expect("indices in range");
    HopfAlgebraData { algebra, coalgebra, antipode }
}
