//! Discrete valuations of the base field `F(X)` and their extension to tower
//! elements through `v(Y) = v(A)/n` for `Y^n = A`.

use num_rational::Rational64;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fieldtower::poly::may_divide;
use crate::fieldtower::{Poly, RatFunc, TowerCtx, TowerElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValuationPlace {
    /// Order of vanishing along `X_s = 0`.
    Variable(usize),
    /// Order of divisibility by an irreducible polynomial.
    Irreducible(Poly),
    /// Minus the total degree.
    Degree,
}

impl ValuationPlace {
    pub fn label(&self, names: &[String]) -> String {
        match self {
            ValuationPlace::Variable(s) => format!("{}-adic", names[*s]),
            ValuationPlace::Irreducible(g) => format!("({})-adic", g.fmt_with(names)),
            ValuationPlace::Degree => "degree".into(),
        }
    }
}

/// Order of a nonzero polynomial at the place.
fn poly_order(p: &Poly, place: &ValuationPlace) -> i64 {
    match place {
        ValuationPlace::Variable(s) => p.min_degree_in(*s) as i64,
        ValuationPlace::Degree => -(p.total_degree() as i64),
        ValuationPlace::Irreducible(g) => {
            let mut k = 0;
            let mut q = p.clone();
            while may_divide(g, &q) {
                match q.div_exact(g) {
                    Some(r) => {
                        q = r;
                        k += 1;
                    }
                    None => break,
                }
            }
            k
        }
    }
}

pub fn g_adic_valuation(f: &RatFunc, place: &ValuationPlace) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(poly_order(f.num(), place) - poly_order(f.den(), place))
}

/// Radical bases known to be irreducible: the edge polynomials
/// `X_s^a + X_t^b + 1` (squarefree `X_s^a + 1` under a Capelli radical) and
/// linear bases.
fn irreducible_base(ctx: &TowerCtx, f: usize) -> bool {
    ctx.radicals()[f].color.is_some() || ctx.base(f).total_degree() <= 1
}

/// Variable places, irreducible radical-base places and the degree place.
pub fn valuation_places(ctx: &TowerCtx) -> Vec<ValuationPlace> {
    let mut out: Vec<ValuationPlace> = (0..ctx.nvars()).map(ValuationPlace::Variable).collect();
    for f in 0..ctx.nradicals() {
        if irreducible_base(ctx, f) && !ctx.base(f).is_constant() {
            let g = ValuationPlace::Irreducible(ctx.base(f).monic());
            if !out.contains(&g) {
                out.push(g);
            }
        }
    }
    out.push(ValuationPlace::Degree);
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct PlaceValue {
    #[serde(skip)]
    pub place: ValuationPlace,
    pub label: String,
    /// `None` when the minimal term is not unique, so the extension to the
    /// tower is not determined by the terms alone.
    #[serde(serialize_with = "ser_value")]
    pub value: Option<Rational64>,
    /// `∏ n_f` over the radicals ramified at the place; the value group of
    /// the truncation lies in `(1/E)ℤ`.
    pub ramification: u64,
    /// Primes along which deeper truncations can ramify at the place.
    pub ramified_primes: Vec<u64>,
}

fn ser_value<S: serde::Serializer>(v: &Option<Rational64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_str("ambiguous"),
    }
}

pub fn valuation_vector(a: &TowerElement) -> Result<Vec<PlaceValue>> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    let ctx = a.ctx();
    let names = ctx.var_names();
    let orders = ctx.orders();
    Ok(valuation_places(ctx)
        .into_iter()
        .map(|place| {
            let va: Vec<i64> = (0..ctx.nradicals()).map(|f| poly_order(ctx.base(f), &place)).collect();
            let mut ramification = 1u64;
            let mut primes: Vec<u64> = match &place {
                ValuationPlace::Variable(s) => vec![ctx.vars()[*s].prime],
                ValuationPlace::Degree => ctx.vars().iter().map(|v| v.prime).collect(),
                ValuationPlace::Irreducible(_) => vec![],
            };
            for (f, &v) in va.iter().enumerate() {
                if v != 0 {
                    ramification *= orders[f];
                    primes.push(ctx.radicals()[f].prime);
                }
            }
            primes.sort_unstable();
            primes.dedup();
            let mut best: Option<Rational64> = None;
            let mut unique = false;
            for (m, p) in a.numerators() {
                let mut t = Rational64::from_integer(poly_order(p, &place));
                for (f, &e) in m.iter().enumerate() {
                    if e > 0 && va[f] != 0 {
                        t += Rational64::new(e as i64 * va[f], orders[f] as i64);
                    }
                }
                match best {
                    Some(b) if t > b => {}
                    Some(b) if t == b => unique = false,
                    _ => {
                        best = Some(t);
                        unique = true;
                    }
                }
            }
            let value = if unique {
                best.map(|b| b - Rational64::from_integer(poly_order(a.denominator(), &place)))
            } else {
                None
            };
            PlaceValue { label: place.label(&names), place, value, ramification, ramified_primes: primes }
        })
        .collect())
}

impl PlaceValue {
    /// `p` does not divide the value in the value group of the truncation.
    pub fn obstructs(&self, p: u64) -> bool {
        match self.value {
            Some(v) => {
                let e = v * Rational64::from_integer(self.ramification as i64);
                !e.is_integer() || !(e.to_integer() % p as i64).is_zero()
            }
            None => false,
        }
    }

    /// The obstruction persists in every deeper truncation: deepening only
    /// ramifies along `ramified_primes`, so the value group stays inside
    /// `ℤ[1/R]` and a `p`-th power has numerator divisible by `p`.
    pub fn obstructs_absolutely(&self, p: u64) -> bool {
        match self.value {
            Some(v) => !self.ramified_primes.contains(&p) && !(v.numer() % p as i64).is_zero(),
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fieldtower::tower::{Depths, DEFAULT_DIM_CAP};
    use crate::fieldtower::{generator_radical, generator_var};
    use crate::graphs::{ColoredGraph, Graph};
    use std::sync::Arc;

    fn x(i: usize) -> Poly {
        Poly::var(2, 0, i)
    }

    #[test]
    fn base_valuations() {
        let one = Poly::one(2, 0);
        let f = RatFunc::new(x(0).pow(2), x(0).add(&one)).unwrap();
        assert_eq!(g_adic_valuation(&f, &ValuationPlace::Variable(0)).unwrap(), 2);
        let g = RatFunc::new(one.clone(), x(0).add(&one)).unwrap();
        assert_eq!(g_adic_valuation(&g, &ValuationPlace::Irreducible(x(0).add(&one))).unwrap(), -1);
        assert_eq!(g_adic_valuation(&g, &ValuationPlace::Degree).unwrap(), 1);
        let z = RatFunc::zero(2, 0);
        assert_eq!(g_adic_valuation(&z, &ValuationPlace::Degree), Err(Error::ZeroInput));
    }

    #[test]
    fn tower_values() {
        let cg = ColoredGraph::monochromatic(Graph::complete(2));
        let ctx = Arc::new(
            TowerCtx::graph_tower(&cg, 0, &Depths::Uniform { vertex: 1, edge: 1 }, DEFAULT_DIM_CAP).unwrap(),
        );
        // x_s^0 = X_s^3: value 3 at X_s, 0 at X_t.
        let xs0 = generator_var(&ctx, 0, 0).unwrap();
        let v = valuation_vector(&xs0).unwrap();
        assert_eq!(v[0].value, Some(Rational64::from_integer(3)));
        assert_eq!(v[1].value, Some(Rational64::from_integer(0)));
        // Y: value 1/5 at the edge place, 0 at the vertex places.
        let y = generator_radical(&ctx, 0, 1).unwrap();
        let v = valuation_vector(&y).unwrap();
        assert_eq!(v[0].value, Some(Rational64::from_integer(0)));
        assert_eq!(v[2].value, Some(Rational64::new(1, 5)));
        assert_eq!(v[2].ramification, 5);
        assert!(v[2].obstructs(5));
        assert!(!v[2].obstructs_absolutely(5));
    }
}
