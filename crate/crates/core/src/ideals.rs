//! Buchberger's algorithm, normal forms and ideal membership.
//!
//! These are the certificates behind every "holds on V" claim elsewhere in
//! the crate: an identity on a variety is checked as membership of the
//! difference in the ideal generated by the variety's equations.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::basefield::RatFunc;
use crate::error::{Error, Result};
use crate::polyalg::{Monomial, MultiPoly};

pub const DEFAULT_DEGREE_CAP: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    #[default]
    Grevlex,
    Lex,
}

/// Monomial order; `priority[0]` is the most significant variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    pub kind: OrderKind,
    pub priority: Vec<usize>,
}

impl TermOrder {
    pub fn grevlex(n: usize) -> Self {
        TermOrder { kind: OrderKind::Grevlex, priority: (0..n).collect() }
    }

    pub fn lex(n: usize) -> Self {
        TermOrder { kind: OrderKind::Lex, priority: (0..n).collect() }
    }

    pub fn new(kind: OrderKind, n: usize) -> Self {
        TermOrder { kind, priority: (0..n).collect() }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for &i in self.priority.iter().rev() {
                    match a.0[i].cmp(&b.0[i]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn lead<'a>(&self, p: &'a MultiPoly) -> Option<(&'a Monomial, &'a RatFunc)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }
}

/// Finite generating set of an ideal; zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealBasis {
    nvars: usize,
    gens: Vec<MultiPoly>,
}

impl IdealBasis {
    pub fn new(nvars: usize, gens: Vec<MultiPoly>) -> Result<Self> {
        for g in &gens {
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: g.nvars() });
            }
        }
        Ok(IdealBasis { nvars, gens: gens.into_iter().filter(|g| !g.is_zero()).collect() })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }
}

/// Which critical pair to process next.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PairSelection {
    /// Smallest lcm degree first, ties by lexicographic pair index.
    #[default]
    Normal,
    /// Most recently created pair first.
    Lifo,
}

/// A reduced Gröbner basis: monic generators, no leading monomial divides
/// another, every generator fully reduced by the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: TermOrder,
    nvars: usize,
    gens: Vec<MultiPoly>,
    leads: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].as_constant().is_some()
    }

    fn from_polys(order: TermOrder, nvars: usize, gens: Vec<MultiPoly>) -> Self {
        let leads = gens.iter().map(|g| order.lead(g).unwrap().0.clone()).collect();
        GroebnerBasis { order, nvars, gens, leads }
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        normal_form(p, self)
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(normal_form(p, self)?.is_zero())
    }

    /// Every S-polynomial of basis pairs reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for i in 0..self.gens.len() {
            for j in i + 1..self.gens.len() {
                let s = s_polynomial(&self.gens[i], &self.gens[j], &self.order);
                match reduce(&s, &self.gens, &self.leads, &self.order, u32::MAX) {
                    Ok(r) if r.is_zero() => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

fn make_monic(p: &MultiPoly, order: &TermOrder) -> MultiPoly {
    match order.lead(p) {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().expect("nonzero lead")),
        _ => p.clone(),
    }
}

fn s_polynomial(f: &MultiPoly, g: &MultiPoly, order: &TermOrder) -> MultiPoly {
    let (lf, cf) = order.lead(f).unwrap();
    let (lg, cg) = order.lead(g).unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient_of(&l), &cf.inv().unwrap());
    let b = g.mul_term(&lg.quotient_of(&l), &cg.inv().unwrap());
    a.sub(&b)
}

/// Full reduction of `p` by `basis` (whose leading monomials are `leads`).
fn reduce(p: &MultiPoly, basis: &[MultiPoly], leads: &[Monomial], order: &TermOrder, cap: u32) -> Result<MultiPoly> {
    let mut p = p.clone();
    let mut rem = MultiPoly::zero(p.nvars());
    loop {
        let (lm, lc) = match order.lead(&p) {
            None => return Ok(rem),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        match leads.iter().position(|l| l.divides(&lm)) {
            Some(k) => {
                let lead_k = order.lead(&basis[k]).unwrap().1;
                let c = lc.div(lead_k)?;
                p = p.sub(&basis[k].mul_term(&leads[k].quotient_of(&lm), &c));
                let d = p.total_degree();
                if d > cap {
                    return Err(Error::DegreeCapExceeded { cap, degree: d });
                }
            }
            None => {
                p.add_term(lm.clone(), lc.neg());
                rem.add_term(lm, lc);
            }
        }
    }
}

/// Complete multivariate division remainder of `p` by `g`.
pub fn normal_form(p: &MultiPoly, g: &GroebnerBasis) -> Result<MultiPoly> {
    if p.nvars() != g.nvars {
        return Err(Error::ArityMismatch { expected: g.nvars, found: p.nvars() });
    }
    reduce(p, &g.gens, &g.leads, &g.order, u32::MAX)
}

/// `p ≡ q` modulo the ideal of `g`.
pub fn equal_mod_ideal(p: &MultiPoly, q: &MultiPoly, g: &GroebnerBasis) -> Result<bool> {
    if p.nvars() != q.nvars() {
        return Err(Error::ArityMismatch { expected: p.nvars(), found: q.nvars() });
    }
    Ok(normal_form(&p.sub(q), g)?.is_zero())
}

pub fn buchberger(ideal: &IdealBasis, order: &TermOrder, degree_cap: u32) -> Result<GroebnerBasis> {
    buchberger_with(ideal, order, degree_cap, PairSelection::Normal)
}

pub fn buchberger_with(
    ideal: &IdealBasis,
    order: &TermOrder,
    degree_cap: u32,
    selection: PairSelection,
) -> Result<GroebnerBasis> {
    let n = ideal.nvars;
    if order.priority.len() != n {
        return Err(Error::ArityMismatch { expected: n, found: order.priority.len() });
    }
    if let Some(d) = ideal.gens.iter().map(MultiPoly::total_degree).max() {
        if d > degree_cap {
            return Err(Error::DegreeCapExceeded { cap: degree_cap, degree: d });
        }
    }
    let unit = || GroebnerBasis::from_polys(order.clone(), n, vec![MultiPoly::one(n)]);
    let mut basis: Vec<MultiPoly> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    for g in &ideal.gens {
        if g.as_constant().is_some() {
            return Ok(unit());
        }
        let g = make_monic(g, order);
        leads.push(order.lead(&g).unwrap().0.clone());
        basis.push(g);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();
    while !pairs.is_empty() {
        let pick = match selection {
            PairSelection::Normal => {
                let key = |&(i, j): &(usize, usize)| (leads[i].lcm(&leads[j]).degree(), i, j);
                (0..pairs.len()).min_by_key(|&k| key(&pairs[k])).unwrap()
            }
            PairSelection::Lifo => pairs.len() - 1,
        };
        let (i, j) = pairs.remove(pick);
        done.insert((i, j));
        let lcm = leads[i].lcm(&leads[j]);
        if leads[i].coprime(&leads[j]) {
            continue;
        }
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && leads[k].divides(&lcm)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        if lcm.degree() > degree_cap {
            return Err(Error::DegreeCapExceeded { cap: degree_cap, degree: lcm.degree() });
        }
        let s = s_polynomial(&basis[i], &basis[j], order);
        let r = reduce(&s, &basis, &leads, order, degree_cap)?;
        if r.is_zero() {
            continue;
        }
        if r.as_constant().is_some() {
            return Ok(unit());
        }
        let r = make_monic(&r, order);
        let k = basis.len();
        leads.push(order.lead(&r).unwrap().0.clone());
        basis.push(r);
        for i in 0..k {
            pairs.push((i, k));
        }
    }
    Ok(interreduce(basis, leads, order, n))
}

fn interreduce(basis: Vec<MultiPoly>, leads: Vec<Monomial>, order: &TermOrder, n: usize) -> GroebnerBasis {
    // Minimal basis: drop generators whose lead is divisible by another lead.
    let mut keep: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i && leads[j].divides(&leads[i]) && (leads[j] != leads[i] || j < i)
        });
        if !redundant {
            keep.push(i);
        }
    }
    let min_polys: Vec<MultiPoly> = keep.iter().map(|&i| basis[i].clone()).collect();
    let min_leads: Vec<Monomial> = keep.iter().map(|&i| leads[i].clone()).collect();
    let mut reduced = Vec::with_capacity(min_polys.len());
    for k in 0..min_polys.len() {
        let others: Vec<MultiPoly> = (0..min_polys.len()).filter(|&j| j != k).map(|j| min_polys[j].clone()).collect();
        let other_leads: Vec<Monomial> = (0..min_leads.len()).filter(|&j| j != k).map(|j| min_leads[j].clone()).collect();
        let tail = min_polys[k].sub(&MultiPoly::term(n, min_leads[k].clone(), RatFunc::one()));
        let tail = reduce(&tail, &others, &other_leads, order, u32::MAX).expect("uncapped reduction");
        reduced.push(tail.add(&MultiPoly::term(n, min_leads[k].clone(), RatFunc::one())));
    }
    reduced.sort_by(|a, b| order.cmp(order.lead(a).unwrap().0, order.lead(b).unwrap().0));
    GroebnerBasis::from_polys(order.clone(), n, reduced)
}
