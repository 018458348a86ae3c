//! Verification sweeps: relation soundness, associativity, rotation
//! transport, surgery order independence, and the combinatorial-vs-geometric
//! loop oracle. Each suite yields one line per checked item.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::algebra::{
    compose_table, hom_space, transport_rotation, CoactionVariant, Degree, HomElement, Tensor,
};
use crate::evaluate::pair_loops;
use crate::geom::diagram::embed_pair;
use crate::geom::surgery::admissible_orders;
use crate::matching::AffineMatching;
use crate::rewrite::{check_relation, relation_instances};
use crate::token::RotDir;

#[derive(Clone, Debug)]
pub struct CheckLine {
    pub label: String,
    pub pass: bool,
    pub detail: String,
}

impl core::fmt::Display for CheckLine {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        if self.detail.is_empty() {
            write!(f, "{verdict} {}", self.label)
        } else {
            write!(f, "{verdict} {} ({})", self.label, self.detail)
        }
    }
}

pub fn all_passed(lines: &[CheckLine]) -> bool {
    lines.iter().all(|l| l.pass)
}

/// Semantic soundness of every relation instance with strand counts up to
/// `max_n`, each completed by at least `samples` random flat contexts.
pub fn relations_suite(max_n: u32, samples: u32) -> Vec<CheckLine> {
    relation_instances(max_n)
        .iter()
        .enumerate()
        .map(|(k, rule)| {
            let pass = check_relation(rule, samples, 0x5eed ^ (k as u64));
            CheckLine { label: format!("{rule}"), pass, detail: String::new() }
        })
        .collect()
}

/// Transport around the annulus: `2n` single-step rotations return every
/// basis element of every hom space unchanged.
pub fn rotation_suite(max_n: u32) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for alpha in AffineMatching::enumerate(n) {
            for beta in AffineMatching::enumerate(n) {
                let space = hom_space(&alpha, &beta);
                let mut pass = true;
                for t in space.basis() {
                    let e = HomElement::basis_element(space.clone(), t).unwrap();
                    let mut moved = e.clone();
                    for _ in 0..2 * n {
                        moved = transport_rotation(&moved, RotDir::Ccw);
                    }
                    if moved != e {
                        pass = false;
                    }
                }
                out.push(CheckLine {
                    label: format!("rotation n={n} {alpha} {beta}"),
                    pass,
                    detail: String::new(),
                });
            }
        }
    }
    out
}

/// Every admissible surgery order yields the same composition table.
pub fn order_independence_suite(max_n: u32, variant: CoactionVariant) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let objs = AffineMatching::enumerate(n);
        for alpha in &objs {
            for beta in &objs {
                for gamma in &objs {
                    let orders = admissible_orders(alpha, beta, gamma).unwrap();
                    let reference = compose_table(alpha, beta, gamma, variant, None).unwrap();
                    let mut pass = true;
                    for order in &orders {
                        let table =
                            compose_table(alpha, beta, gamma, variant, Some(order)).unwrap();
                        if table != reference {
                            pass = false;
                        }
                    }
                    out.push(CheckLine {
                        label: format!("order-independence n={n} {alpha} {beta} {gamma}"),
                        pass,
                        detail: format!("{} orders", orders.len()),
                    });
                }
            }
        }
    }
    out
}

/// Combinatorial seam-count loop classification against the exact PL
/// winding-number kernel, all matching pairs up to `max_n`.
pub fn oracle_suite(max_n: u32) -> Vec<CheckLine> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let objs = AffineMatching::enumerate(n);
        let mut mismatches = 0u64;
        let mut pairs = 0u64;
        for alpha in &objs {
            for beta in &objs {
                pairs += 1;
                let comb = pair_loops(alpha, beta);
                let geo = embed_pair(alpha, beta).loops().unwrap();
                let ok = comb.len() == geo.len()
                    && comb.iter().zip(geo.iter()).all(|(c, g)| {
                        c.class() == g.class() && c.min_point == g.min_marker.1
                    });
                if !ok {
                    mismatches += 1;
                }
            }
        }
        out.push(CheckLine {
            label: format!("oracle n={n}"),
            pass: mismatches == 0,
            detail: format!("{pairs} pairs, {mismatches} mismatches"),
        });
    }
    out
}

/// One failed associativity instance, with printable data.
#[derive(Clone, Debug)]
pub struct AssocFailure {
    pub objects: [String; 4],
    pub inputs: [String; 3],
    pub left: String,
    pub right: String,
}

/// Outcome of an exhaustive associativity sweep at one strand count under
/// one coaction variant, including the degree-additivity diagnostic.
#[derive(Clone, Debug)]
pub struct AssociativityReport {
    pub n: u32,
    pub variant: CoactionVariant,
    pub quadruples: u64,
    pub basis_triples: u64,
    pub failures: Vec<AssocFailure>,
    /// Compositions of homogeneous elements whose degree is not the sum of
    /// the input degrees.
    pub degree_additivity_violations: u64,
}

impl AssociativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn apply_table(
    table: &BTreeMap<(Tensor, Tensor), HomElement>,
    x: &HomElement,
    y: &HomElement,
) -> HomElement {
    let mut iter = table.values();
    let mut out = HomElement::zero(
        iter.next()
            .expect("composition table is never empty")
            .space()
            .clone(),
    );
    for (tx, cx) in x.terms() {
        for (ty, cy) in y.terms() {
            let image = &table[&(tx.clone(), ty.clone())];
            let scaled = image.scale(&(cx * cy));
            out = out.add(&scaled).expect("tables share a target space");
        }
    }
    out
}

/// Exhaustive associativity sweep over all object quadruples and all basis
/// tensors at strand count `2n`.
pub fn associativity_report(n: u32, variant: CoactionVariant) -> AssociativityReport {
    let objs = AffineMatching::enumerate(n);
    let k = objs.len();
    // All pairwise composition tables.
    let mut tables: BTreeMap<(usize, usize, usize), BTreeMap<(Tensor, Tensor), HomElement>> =
        BTreeMap::new();
    let mut degree_violations = 0u64;
    for a in 0..k {
        for b in 0..k {
            for c in 0..k {
                let table = compose_table(&objs[a], &objs[b], &objs[c], variant, None).unwrap();
                let left = hom_space(&objs[a], &objs[b]);
                let right = hom_space(&objs[b], &objs[c]);
                for ((tx, ty), image) in &table {
                    if image.is_zero() {
                        continue;
                    }
                    let expect = left.degree_of(tx) + right.degree_of(ty);
                    if image.degree() != Degree::Homogeneous(expect) {
                        degree_violations += 1;
                    }
                }
                tables.insert((a, b, c), table);
            }
        }
    }

    let mut failures = Vec::new();
    let mut quadruples = 0u64;
    let mut basis_triples = 0u64;
    for a in 0..k {
        for b in 0..k {
            let ab = hom_space(&objs[a], &objs[b]);
            for c in 0..k {
                let bc = hom_space(&objs[b], &objs[c]);
                for d in 0..k {
                    let cd = hom_space(&objs[c], &objs[d]);
                    quadruples += 1;
                    for tx in ab.basis() {
                        let x = HomElement::basis_element(ab.clone(), tx.clone()).unwrap();
                        for ty in bc.basis() {
                            let y = HomElement::basis_element(bc.clone(), ty.clone()).unwrap();
                            let xy = apply_table(&tables[&(a, b, c)], &x, &y);
                            for tz in cd.basis() {
                                basis_triples += 1;
                                let z =
                                    HomElement::basis_element(cd.clone(), tz.clone()).unwrap();
                                let yz = apply_table(&tables[&(b, c, d)], &y, &z);
                                let left = apply_table(&tables[&(a, c, d)], &xy, &z);
                                let right = apply_table(&tables[&(a, b, d)], &x, &yz);
                                if left != right {
                                    failures.push(AssocFailure {
                                        objects: [
                                            objs[a].to_string(),
                                            objs[b].to_string(),
                                            objs[c].to_string(),
                                            objs[d].to_string(),
                                        ],
                                        inputs: [
                                            tx.to_string(),
                                            ty.to_string(),
                                            tz.to_string(),
                                        ],
                                        left: left.to_string(),
                                        right: right.to_string(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    AssociativityReport {
        n,
        variant,
        quadruples,
        basis_triples,
        failures,
        degree_additivity_violations: degree_violations,
    }
}

/// The scalar-level multiplication table for fixed `n`: one record per
/// nonzero structure constant.
#[derive(Clone, Debug)]
pub struct StructureConstant {
    pub n: u32,
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
    pub x: Tensor,
    pub y: Tensor,
    pub result: Vec<(Tensor, BigRational)>,
}

pub fn multiplication_table(n: u32, variant: CoactionVariant) -> Vec<StructureConstant> {
    let objs = AffineMatching::enumerate(n);
    let mut out = Vec::new();
    for alpha in &objs {
        for beta in &objs {
            for gamma in &objs {
                let table = compose_table(alpha, beta, gamma, variant, None).unwrap();
                for ((x, y), image) in table {
                    if image.is_zero() {
                        continue;
                    }
                    out.push(StructureConstant {
                        n,
                        alpha: alpha.to_string(),
                        beta: beta.to_string(),
                        gamma: gamma.to_string(),
                        x,
                        y,
                        result: image
                            .terms()
                            .iter()
                            .map(|(t, c)| (t.clone(), c.clone()))
                            .collect(),
                    });
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_agrees_for_small_sizes() {
        assert!(all_passed(&oracle_suite(2)));
    }

    #[test]
    fn rotation_transport_small() {
        assert!(all_passed(&rotation_suite(1)));
    }

    #[test]
    fn associativity_exhaustive_two_points() {
        let report = associativity_report(1, CoactionVariant::Paper);
        assert!(report.passed(), "failures: {:?}", report.failures);
        assert_eq!(report.quadruples, 16);
    }
}
