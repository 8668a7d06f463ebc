//! Reduced Gröbner bases in `Q[q, x]` for the lexicographic order with
//! `q < x`, tracking how every basis element is built from the input.

use num_rational::BigRational;
use num_traits::One;

use super::bipoly::{BiPoly, Mono};

/// Reduced Gröbner basis together with a cofactor table:
/// `basis[k] = Σ_i cofactors[k][i] * input[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub input: Vec<BiPoly>,
    pub basis: Vec<BiPoly>,
    pub cofactors: Vec<Vec<BiPoly>>,
}

#[derive(Clone)]
struct Tracked {
    p: BiPoly,
    rep: Vec<BiPoly>,
}

impl Tracked {
    fn sub_scaled(&mut self, o: &Tracked, c: &BigRational, m: &Mono) {
        let t = BiPoly::term(c.clone(), *m);
        self.p = &self.p - &(&o.p * &t);
        for (a, b) in self.rep.iter_mut().zip(&o.rep) {
            if !b.is_zero() {
                *a = &*a - &(b * &t);
            }
        }
    }

    fn scale(&mut self, c: &BigRational) {
        self.p = self.p.scale(c);
        for a in &mut self.rep {
            *a = a.scale(c);
        }
    }
}

/// Fully reduce `f` modulo `g`, returning the remainder and the quotients
/// (one per divisor).
pub fn reduce(f: &BiPoly, g: &[BiPoly]) -> (BiPoly, Vec<BiPoly>) {
    let mut t = Tracked {
        p: f.clone(),
        rep: vec![BiPoly::zero(); g.len()],
    };
    let gs: Vec<Tracked> = g
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let mut rep = vec![BiPoly::zero(); g.len()];
            rep[i] = BiPoly::one();
            Tracked { p: p.clone(), rep }
        })
        .collect();
    let r = full_reduce(&mut t, &gs);
    (r, t.rep.iter().map(|q| -q).collect())
}

/// Reduce every term of `t.p` (top-down); returns the remainder and leaves
/// in `t.rep` the representation of `f - remainder`, negated.
fn full_reduce(t: &mut Tracked, g: &[Tracked]) -> BiPoly {
    let mut rem = BiPoly::zero();
    while let Some(m) = t.p.lm() {
        let c = t.p.lc();
        match g.iter().find(|d| d.p.lm().is_some_and(|dm| dm.divides(&m))) {
            Some(d) => {
                let dm = d.p.lm().unwrap();
                let k = &c / &d.p.lc();
                t.sub_scaled(d, &k, &m.div(&dm));
            }
            None => {
                rem.add_term(m, &c);
                t.p.add_term(m, &-c);
            }
        }
    }
    t.p = rem.clone();
    rem
}

fn spoly(a: &Tracked, b: &Tracked) -> Tracked {
    let (ma, mb) = (a.p.lm().unwrap(), b.p.lm().unwrap());
    let l = ma.lcm(&mb);
    let ta = BiPoly::term(BigRational::one() / a.p.lc(), l.div(&ma));
    let tb = BiPoly::term(BigRational::one() / b.p.lc(), l.div(&mb));
    Tracked {
        p: &(&a.p * &ta) - &(&b.p * &tb),
        rep: a.rep.iter().zip(&b.rep).map(|(x, y)| &(x * &ta) - &(y * &tb)).collect(),
    }
}

impl GroebnerBasis {
    /// Buchberger's algorithm with the product and chain criteria, followed
    /// by interreduction. Zero inputs are ignored; the basis is sorted by
    /// increasing leading monomial and every element is monic.
    pub fn compute(input: &[BiPoly]) -> GroebnerBasis {
        let n = input.len();
        let mut g: Vec<Tracked> = Vec::new();
        for (i, p) in input.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut rep = vec![BiPoly::zero(); n];
            rep[i] = BiPoly::one();
            g.push(Tracked { p: p.clone(), rep });
        }
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for j in 0..g.len() {
            for i in 0..j {
                pairs.push((i, j));
            }
        }
        while let Some(idx) = select_pair(&pairs, &g) {
            let (i, j) = pairs.remove(idx);
            let (mi, mj) = (g[i].p.lm().unwrap(), g[j].p.lm().unwrap());
            if mi.coprime(&mj) {
                continue;
            }
            let l = mi.lcm(&mj);
            let chain = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && g[k].p.lm().unwrap().divides(&l)
                    && !pairs.contains(&(i.min(k), i.max(k)))
                    && !pairs.contains(&(j.min(k), j.max(k)))
            });
            if chain {
                continue;
            }
            let mut s = spoly(&g[i], &g[j]);
            full_reduce(&mut s, &g);
            if s.p.is_zero() {
                continue;
            }
            let k = g.len();
            g.push(s);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
        interreduce(input.to_vec(), g)
    }

    /// Normal form of `f` modulo the basis.
    pub fn normal_form(&self, f: &BiPoly) -> BiPoly {
        reduce(f, &self.basis).0
    }

    pub fn contains(&self, f: &BiPoly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Element of minimal `x`-degree. In a reduced lex basis the `x`-degrees
    /// of the leading monomials are distinct, so this is unique.
    pub fn min_deg_x(&self) -> Option<(usize, &BiPoly)> {
        self.basis.iter().enumerate().min_by_key(|(_, p)| p.deg_x().unwrap_or(0))
    }

    /// Check the cofactor table by re-expansion.
    pub fn verify_cofactors(&self) -> bool {
        self.basis.iter().zip(&self.cofactors).all(|(g, c)| {
            let mut s = BiPoly::zero();
            for (h, b) in c.iter().zip(&self.input) {
                s = &s + &(h * b);
            }
            &s == g
        })
    }

    /// All S-polynomials of the basis reduce to zero.
    pub fn verify_buchberger(&self) -> bool {
        for j in 0..self.basis.len() {
            for i in 0..j {
                let (a, b) = (&self.basis[i], &self.basis[j]);
                let (ma, mb) = (a.lm().unwrap(), b.lm().unwrap());
                let l = ma.lcm(&mb);
                let s = &a.mul_mono(&l.div(&ma)).scale(&(BigRational::one() / a.lc()))
                    - &b.mul_mono(&l.div(&mb)).scale(&(BigRational::one() / b.lc()));
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Normal selection strategy: the pair with the smallest lcm, oldest first.
fn select_pair(pairs: &[(usize, usize)], g: &[Tracked]) -> Option<usize> {
    pairs
        .iter()
        .enumerate()
        .min_by_key(|(_, &(i, j))| g[i].p.lm().unwrap().lcm(&g[j].p.lm().unwrap()))
        .map(|(k, _)| k)
}

fn interreduce(input: Vec<BiPoly>, mut g: Vec<Tracked>) -> GroebnerBasis {
    // minimal basis: drop elements whose leading monomial is divisible by another's
    g.sort_by_key(|t| t.p.lm().unwrap());
    let mut min: Vec<Tracked> = Vec::new();
    for t in g {
        let m = t.p.lm().unwrap();
        if !min.iter().any(|o| o.p.lm().unwrap().divides(&m)) {
            min.push(t);
        }
    }
    for i in 0..min.len() {
        let others: Vec<Tracked> = min.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, t)| t.clone()).collect();
        let mut t = min[i].clone();
        // the leading term is not divisible by any other leading monomial,
        // so full reduction only touches the tail
        full_reduce(&mut t, &others);
        let inv = BigRational::one() / t.p.lc();
        t.scale(&inv);
        min[i] = t;
    }
    GroebnerBasis {
        input,
        basis: min.iter().map(|t| t.p.clone()).collect(),
        cofactors: min.into_iter().map(|t| t.rep).collect(),
    }
}
