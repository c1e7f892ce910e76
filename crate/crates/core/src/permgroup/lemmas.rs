//! Executable checks of the structural facts about finite groups that the
//! density arguments rely on.

use num_integer::Integer;

use super::{GroupShape, PermError, PermGroup, TorsionSelector, DEFAULT_NORMAL_SUBGROUP_CAP};
use crate::numtheory::{factor, np_contains, pp_contains, sp_contains};

/// Outcome of comparing `O(G/N)` with the image of `O(G)` for one `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddLemmaEntry {
    pub normal_order: usize,
    pub quotient_order: usize,
    pub odd_part_order: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddLemmaReport {
    pub entries: Vec<OddLemmaEntry>,
}

impl OddLemmaReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }
}

/// Checks `O(G/N) = O(G)N/N` for every normal subgroup `N`.
pub fn verify_odd_lemma(g: &PermGroup) -> Result<OddLemmaReport, PermError> {
    let odd = g.torsion_subgroup(TorsionSelector::Odd);
    let entries = g
        .normal_subgroups(DEFAULT_NORMAL_SUBGROUP_CAP)?
        .iter()
        .map(|n| {
            let q = g.quotient(n)?;
            let direct = q.group().torsion_subgroup(TorsionSelector::Odd);
            let image = q.image_of(&odd);
            Ok(OddLemmaEntry {
                normal_order: n.order(),
                quotient_order: q.group().order(),
                odd_part_order: direct.order(),
                pass: direct.elements() == image.elements(),
            })
        })
        .collect::<Result<Vec<_>, PermError>>()?;
    Ok(OddLemmaReport { entries })
}

/// What [`normal_sylow_quotient`] verified about `G/K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowReport {
    pub p: u64,
    pub kernel_order: usize,
    pub quotient_order: usize,
    /// Order of the cyclic complement `H`, dividing `p - 1`.
    pub complement_order: usize,
    pub normal_p_subgroup: bool,
    pub complement_cyclic: bool,
    pub faithful: bool,
}

impl SylowReport {
    pub fn valid(&self) -> bool {
        let h = self.complement_order as u64;
        self.normal_p_subgroup
            && self.complement_cyclic
            && self.faithful
            && (self.p - 1).is_multiple_of(h)
            && self.quotient_order as u64 == self.p * h
    }

    /// `C_p` or `C_p:C_h`.
    pub fn structure(&self) -> String {
        if self.complement_order == 1 {
            format!("C{}", self.p)
        } else {
            format!("C{}:C{}", self.p, self.complement_order)
        }
    }
}

/// For `|G|` in `NP_p`, builds the quotient `C_p : H` with `H` cyclic acting
/// faithfully: `K` is the `p'`-part of the centraliser of the normal
/// subgroup `P` of order `p`, and the result is `G/K`.
pub fn normal_sylow_quotient(g: &PermGroup, p: u64) -> Result<(PermGroup, SylowReport), PermError> {
    let order = g.order() as u64;
    if !np_contains(order, p).map_err(|e| PermError::Invariant(e.to_string()))? {
        return Err(PermError::NotInNp { order, p });
    }
    let x = g.elements().iter().find(|x| x.order() == p).expect("Cauchy: an element of order p");
    let sylow = g.subgroup(vec![x.clone()])?;
    if !g.is_normal(&sylow)? {
        return Err(PermError::Invariant(format!("subgroup of order {p} is not normal")));
    }
    let centralizer = g.centralizer_of(std::slice::from_ref(x));
    let kernel =
        centralizer.subgroup_generated_by(centralizer.elements().iter().filter(|y| y.order().gcd(&p) == 1));
    if kernel.order() as u64 * p != centralizer.order() as u64 {
        return Err(PermError::Invariant("centraliser does not split as P x K".into()));
    }
    if !g.is_normal(&kernel)? {
        return Err(PermError::Invariant("p'-part of the centraliser is not normal".into()));
    }
    let q = g.quotient(&kernel)?;
    let sylow_image = q.image_of(&sylow);
    let quotient = q.into_group();
    let normal_p_subgroup = sylow_image.order() as u64 == p && quotient.is_normal(&sylow_image)?;
    let top = quotient.quotient(&sylow_image)?.into_group();
    let complement_cyclic = matches!(top.shape(), GroupShape::Cyclic(_));
    let faithful = quotient.centralizer_of(sylow_image.generators()).order() as u64 == p;
    let report = SylowReport {
        p,
        kernel_order: kernel.order(),
        quotient_order: quotient.order(),
        complement_order: top.order(),
        normal_p_subgroup,
        complement_cyclic,
        faithful,
    };
    Ok((quotient, report))
}

/// Every nontrivial normal subgroup is transitive. The trivial group is not
/// quasiprimitive.
pub fn is_quasiprimitive(g: &PermGroup) -> Result<bool, PermError> {
    if !g.is_transitive() {
        return Err(PermError::NotTransitive);
    }
    if g.order() == 1 {
        return Ok(false);
    }
    Ok(g.normal_subgroups(DEFAULT_NORMAL_SUBGROUP_CAP)?
        .iter()
        .filter(|n| n.order() > 1)
        .all(PermGroup::is_transitive))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiprimitiveReport {
    pub quasiprimitive: bool,
    pub order: usize,
    pub odd_part_order: usize,
    pub odd_part_transitive: bool,
}

impl QuasiprimitiveReport {
    /// `O(G)` is transitive whenever `G` is quasiprimitive of order above 2.
    pub fn pass(&self) -> bool {
        !self.quasiprimitive || self.order <= 2 || self.odd_part_transitive
    }
}

pub fn verify_quasiprimitive_odd(g: &PermGroup) -> Result<QuasiprimitiveReport, PermError> {
    let quasiprimitive = is_quasiprimitive(g)?;
    let odd = g.torsion_subgroup(TorsionSelector::Odd);
    Ok(QuasiprimitiveReport {
        quasiprimitive,
        order: g.order(),
        odd_part_order: odd.order(),
        odd_part_transitive: odd.is_transitive(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrucOutcome {
    /// `|G|` is not in `SP_a`, or `G` is not generated by elements of order
    /// dividing `a`.
    HypothesesFail(String),
    /// Shape of `G / O_a(G)`; the check passes when it is not cyclic.
    Checked { witness_prime: u64, shape: GroupShape },
}

impl StrucOutcome {
    pub fn pass(&self) -> bool {
        match self {
            StrucOutcome::HypothesesFail(_) => true,
            StrucOutcome::Checked { shape, .. } => !matches!(shape, GroupShape::Cyclic(_)),
        }
    }
}

/// For `|G|` in `SP_a` and `G = A_a(G)`, `G / O_a(G)` is not cyclic.
pub fn verify_struc_lemma(g: &PermGroup, a: u64) -> Result<StrucOutcome, PermError> {
    let order = g.order() as u64;
    let in_sp = sp_contains(order, a).map_err(|e| PermError::Invariant(e.to_string()))?;
    if !in_sp {
        return Ok(StrucOutcome::HypothesesFail(format!("{order} is not in SP_{a}")));
    }
    if g.torsion_subgroup(TorsionSelector::Divides(a)).order() != g.order() {
        return Ok(StrucOutcome::HypothesesFail(format!("A_{a}(G) is a proper subgroup")));
    }
    let witness_prime = factor(order)
        .expect("order >= 1")
        .factors()
        .iter()
        .map(|&(p, _)| p)
        .find(|&p| pp_contains(p, a) && np_contains(order, p).unwrap_or(false))
        .expect("order lies in SP_a");
    let odd_a = g.torsion_subgroup(TorsionSelector::OddAndDivides(a));
    let shape = g.quotient(&odd_a)?.group().shape();
    Ok(StrucOutcome::Checked { witness_prime, shape })
}
