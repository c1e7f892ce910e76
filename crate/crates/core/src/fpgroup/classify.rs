//! The trichotomy for finitely generated groups: an infinite cyclic
//! quotient, else an infinite dihedral quotient, else neither.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::coset_table::CosetTable;
use super::presentation::Presentation;
use super::rewrite::{reidemeister_schreier, SubgroupPresentation};
use super::snf::{abelianization, SmithForm};
use super::word::{Letter, Word};
use super::FpError;

/// A surjection onto the integers: generator `i` maps to `images[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWitness {
    pub images: Vec<BigInt>,
}

impl CyclicWitness {
    /// Checks that every relator maps to 0 and the images are coprime.
    pub fn verify(&self, pres: &Presentation) -> bool {
        is_surjection(&pres.exponent_matrix(), &self.images)
    }

    pub fn images_i64(&self) -> Option<Vec<i64>> {
        self.images.iter().map(|v| v.to_i64()).collect()
    }
}

fn is_surjection(matrix: &[Vec<i64>], images: &[BigInt]) -> bool {
    let kills = matrix.iter().all(|row| {
        row.len() == images.len() && row.iter().zip(images).map(|(&a, b)| BigInt::from(a) * b).sum::<BigInt>().is_zero()
    });
    let g = images.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    kills && g == BigInt::from(1)
}

/// An index-2 subgroup `M` whose dihedralization is infinite.
#[derive(Clone, Debug)]
pub struct DihedralWitness {
    pub subgroup: SubgroupPresentation,
    /// Representative of the nontrivial coset.
    pub outer: Word,
    /// `M` with the dihedralizing relators added.
    pub dihedralization: Presentation,
    /// A surjection of the dihedralization onto the integers.
    pub surjection: CyclicWitness,
}

impl DihedralWitness {
    /// Re-derives the dihedralizing relators from the table and checks the
    /// surjection against them.
    pub fn verify(&self, pres: &Presentation) -> bool {
        let t = self.subgroup.table();
        t.index() == 2
            && t.verify(pres).is_ok()
            && t.trace(0, &self.outer) == Some(1)
            && dihedralize(&self.subgroup, &self.outer).ok().as_ref() == Some(&self.dihedralization)
            && self.surjection.verify(&self.dihedralization)
    }
}

/// Record of the failed searches behind a density-zero verdict.
#[derive(Clone, Debug)]
pub struct NegativeChecks {
    pub abelianization: SmithForm,
    /// One entry per index-2 subgroup: its table and the invariants of its
    /// (finite) dihedralization.
    pub index_two: Vec<(CosetTable, Vec<BigInt>)>,
}

#[derive(Clone, Debug)]
pub enum DensityClass {
    InfiniteCyclic(CyclicWitness),
    InfiniteDihedral(Box<DihedralWitness>),
    DensityZero(NegativeChecks),
}

impl DensityClass {
    pub fn tag(&self) -> &'static str {
        match self {
            DensityClass::InfiniteCyclic(_) => "infinite_cyclic",
            DensityClass::InfiniteDihedral(_) => "infinite_dihedral",
            DensityClass::DensityZero(_) => "density_zero",
        }
    }

    /// Natural density of the set of finite quotient orders.
    pub fn density(&self) -> &'static str {
        match self {
            DensityClass::InfiniteCyclic(_) => "1",
            DensityClass::InfiniteDihedral(_) => "1/2",
            DensityClass::DensityZero(_) => "0",
        }
    }

    /// Independent re-check of the witness.
    pub fn verify(&self, pres: &Presentation) -> bool {
        match self {
            DensityClass::InfiniteCyclic(w) => w.verify(pres),
            DensityClass::InfiniteDihedral(w) => w.verify(pres) && abelianization(pres).free_rank() == 0,
            DensityClass::DensityZero(checks) => {
                abelianization(pres).free_rank() == 0
                    && index_two_subgroups(pres).iter().eq(checks.index_two.iter().map(|(t, _)| t))
                    && checks.index_two.iter().all(|(t, inv)| {
                        !inv.iter().any(Zero::is_zero)
                            && dihedralization_of(pres, t).is_ok_and(|(_, _, p)| abelianization(&p).invariants() == inv)
                    })
            }
        }
    }
}

impl fmt::Display for DensityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An infinite cyclic quotient exists iff the abelianization has positive
/// free rank; the witness is a column of the right Smith transform at a
/// zero invariant.
pub fn has_infinite_cyclic_quotient(pres: &Presentation) -> Option<CyclicWitness> {
    let s = abelianization(pres);
    let k = s.invariants().iter().position(Zero::is_zero)?;
    let w = CyclicWitness { images: s.right_column(k) };
    debug_assert!(w.verify(pres));
    Some(w)
}

/// All subgroups of index 2, one per nonzero homomorphism onto `C2`,
/// sorted by table.
pub fn index_two_subgroups(pres: &Presentation) -> Vec<CosetTable> {
    let g = pres.num_generators();
    // Gaussian elimination mod 2 on the exponent matrix
    let mut rows: Vec<Vec<u8>> =
        pres.exponent_matrix().iter().map(|r| r.iter().map(|&v| v.rem_euclid(2) as u8).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..g {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] == 1) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][col] == 1 {
                let pivot = rows[r].clone();
                for (a, b) in rows[i].iter_mut().zip(pivot) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let free: Vec<usize> = (0..g).filter(|c| !pivots.contains(c)).collect();
    let basis: Vec<Vec<u8>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u8; g];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = rows[i][f];
            }
            v
        })
        .collect();
    let r = basis.len();
    assert!(r < 32, "mod-2 rank too large to enumerate");
    let mut tables: Vec<CosetTable> = (1u64..1 << r)
        .map(|mask| {
            let mut v = vec![0u8; g];
            for (k, b) in basis.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    for (a, x) in v.iter_mut().zip(b) {
                        *a ^= x;
                    }
                }
            }
            let mut data = Vec::with_capacity(4 * g);
            for c in 0..2u32 {
                for &bit in &v {
                    let d = c ^ bit as u32;
                    data.extend([d, d]);
                }
            }
            CosetTable::from_raw(g, 2, data, Vec::new()).standardized()
        })
        .collect();
    tables.sort();
    tables
}

/// Adds to the presentation of `M` the relators `[m_i, m_j]`, `b^2` and
/// `m_i^b m_i`, rewritten in the Schreier generators.
fn dihedralize(sub: &SubgroupPresentation, b: &Word) -> Result<Presentation, FpError> {
    let k = sub.presentation().num_generators();
    let mut extra = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            extra.push(Word::commutator(&Word::new([Letter::gen(i)]), &Word::new([Letter::gen(j)])));
        }
    }
    extra.push(sub.rewrite(&b.pow(2))?);
    for i in 0..k {
        let conj = sub.rewrite(&sub.expand(i).conjugate_by(b))?;
        extra.push(conj.concat(&Word::new([Letter::gen(i)])));
    }
    Ok(sub.presentation().with_extra_relators(extra))
}

fn dihedralization_of(
    pres: &Presentation,
    table: &CosetTable,
) -> Result<(SubgroupPresentation, Word, Presentation), FpError> {
    let sub = reidemeister_schreier(pres, table)?;
    let b = sub.transversal()[1].clone();
    let p = dihedralize(&sub, &b)?;
    Ok((sub, b, p))
}

/// Looks for an index-2 subgroup whose dihedralization is infinite.
pub fn has_infinite_dihedral_quotient(pres: &Presentation) -> Result<Option<DihedralWitness>, FpError> {
    Ok(dihedral_search(pres)?.0)
}

type IndexTwoRecord = Vec<(CosetTable, Vec<BigInt>)>;

fn dihedral_search(pres: &Presentation) -> Result<(Option<DihedralWitness>, IndexTwoRecord), FpError> {
    let mut record = Vec::new();
    for t in index_two_subgroups(pres) {
        let (sub, outer, dihedralization) = dihedralization_of(pres, &t)?;
        if let Some(surjection) = has_infinite_cyclic_quotient(&dihedralization) {
            let w = DihedralWitness { subgroup: sub, outer, dihedralization, surjection };
            debug_assert!(w.verify(pres));
            return Ok((Some(w), record));
        }
        record.push((t, abelianization(&dihedralization).invariants().to_vec()));
    }
    Ok((None, record))
}

/// Decides which of the three cases holds, with witnesses.
pub fn classify_density(pres: &Presentation) -> Result<DensityClass, FpError> {
    if let Some(w) = has_infinite_cyclic_quotient(pres) {
        return Ok(DensityClass::InfiniteCyclic(w));
    }
    match dihedral_search(pres)? {
        (Some(w), _) => Ok(DensityClass::InfiniteDihedral(Box::new(w))),
        (None, index_two) => Ok(DensityClass::DensityZero(NegativeChecks { abelianization: abelianization(pres), index_two })),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn index_two_counts() {
        assert_eq!(index_two_subgroups(&pres("gens: a b\nrels: a^2, b^2")).len(), 3);
        assert_eq!(index_two_subgroups(&pres("gens: a b\nrels: a^2, b^3")).len(), 1);
        assert!(index_two_subgroups(&pres("gens: x\nrels: x^3")).is_empty());
        assert_eq!(index_two_subgroups(&pres("gens: a b c")).len(), 7);
        for t in index_two_subgroups(&pres("gens: a b\nrels: a^2, b^2")) {
            t.verify(&pres("gens: a b\nrels: a^2, b^2")).unwrap();
        }
    }

    #[test]
    fn cyclic_witnesses() {
        for text in ["gens: x", "gens: x y\nrels: x^2 y^-3", "gens: a b\nrels: a^2"] {
            let p = pres(text);
            let w = has_infinite_cyclic_quotient(&p).unwrap();
            assert!(w.verify(&p), "{text}");
        }
        assert!(has_infinite_cyclic_quotient(&pres("gens: a b\nrels: a^2, b^2")).is_none());
    }

    #[test]
    fn dihedral() {
        let p = pres("gens: a b\nrels: a^2, b^2");
        let w = has_infinite_dihedral_quotient(&p).unwrap().unwrap();
        assert!(w.verify(&p));
        assert!(has_infinite_dihedral_quotient(&pres("gens: a b\nrels: a^2, b^3")).unwrap().is_none());
        assert!(has_infinite_dihedral_quotient(&pres("gens: x")).unwrap().is_none());
    }

    #[test]
    fn classification() {
        for (text, tag) in [
            ("gens: x", "infinite_cyclic"),
            ("gens: a b\nrels: a^2, b^2", "infinite_dihedral"),
            ("gens: x y t\nrels: [x,y], t^4, t^-1 x t = y, t^-1 y t = x^-1", "density_zero"),
            ("gens: a b\nrels: a^2, b^3", "density_zero"),
            ("gens: a b\nrels: a^2, b^2, (ab)^5", "density_zero"),
            ("gens: a b c\nrels: a^2, b^2, c^2, (ab)^2", "infinite_dihedral"),
        ] {
            let p = pres(text);
            let c = classify_density(&p).unwrap();
            assert_eq!(c.tag(), tag, "{text}");
            assert!(c.verify(&p), "{text}");
        }
    }
}
