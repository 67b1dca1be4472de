use super::{BinaryForm, LinearForm};
use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::poly::{sylvester_resultant, Poly};

fn y_power<K: Field>(a: usize) -> BinaryForm<K> {
    BinaryForm::monomial(K::one(), 0, a)
}

/// Canonical greatest common divisor; `gcd(f, 0)` is `f` canonicalized.
///
/// Powers of `y` are split off and the rest is handled through the
/// dehomogenized polynomials `f(x, 1)`, `g(x, 1)`.
pub fn gcd<K: Field>(f: &BinaryForm<K>, g: &BinaryForm<K>) -> Result<BinaryForm<K>> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::GcdOfZeroForms),
        (false, true) => return Ok(f.canonical()),
        (true, false) => return Ok(g.canonical()),
        (false, false) => {}
    }
    let a = f.y_multiplicity().unwrap_or(0).min(g.y_multiplicity().unwrap_or(0));
    let h = Poly::gcd(&f.dehomogenize(), &g.dehomogenize());
    let e = h.degree().unwrap_or(0);
    Ok(BinaryForm::homogenize(&h, e).mul(&y_power(a)))
}

/// gcd of every nonzero form in `forms`.
pub fn gcd_all<'a, K: Field>(forms: impl IntoIterator<Item = &'a BinaryForm<K>>) -> Result<BinaryForm<K>> {
    let mut acc: Option<BinaryForm<K>> = None;
    for f in forms {
        if f.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => f.canonical(),
            Some(g) => gcd(&g, f)?,
        });
        if acc.as_ref().is_some_and(|g| g.degree() == 0) {
            break;
        }
    }
    acc.ok_or(Error::GcdOfZeroForms)
}

/// Pairwise coprime, square-free, canonical `(g_m, m)` with
/// `f = unit · Π g_m^m`, sorted by multiplicity.
pub fn squarefree_decomposition<K: Field>(f: &BinaryForm<K>) -> Result<Vec<(BinaryForm<K>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroForm("squarefree_decomposition"));
    }
    let a = f.y_multiplicity().unwrap_or(0) as u32;
    let mut out: Vec<(BinaryForm<K>, u32)> = f
        .dehomogenize()
        .squarefree_decomposition()
        .into_iter()
        .map(|(g, m)| {
            let d = g.degree().unwrap_or(0);
            (BinaryForm::homogenize(&g, d), m)
        })
        .collect();
    if a > 0 {
        match out.iter().position(|(_, m)| *m >= a) {
            Some(i) if out[i].1 == a => out[i].0 = out[i].0.mul(&BinaryForm::y()),
            Some(i) => out.insert(i, (BinaryForm::y(), a)),
            None => out.push((BinaryForm::y(), a)),
        }
    }
    Ok(out)
}

/// Product of the distinct linear factors of `f` (canonical).
pub fn squarefree_part<K: Field>(f: &BinaryForm<K>) -> Result<BinaryForm<K>> {
    Ok(squarefree_decomposition(f)?
        .into_iter()
        .fold(BinaryForm::one(), |acc, (g, _)| acc.mul(&g)))
}

/// Number of distinct linear factors over `C`: the degree of the square-free part.
pub fn distinct_linear_factor_count<K: Field>(f: &BinaryForm<K>) -> Result<usize> {
    Ok(squarefree_decomposition(f)?.iter().map(|(g, _)| g.degree()).sum())
}

/// Largest `m` with `ℓ^m | f`, by repeated synthetic division.
///
/// For approximate coefficients a remainder counts as zero when it is below
/// `tol` relative to the coefficient scale; exact fields ignore `tol`.
pub fn multiplicity_at<K: Coeff>(f: &BinaryForm<K>, l: &LinearForm<K>, tol: f64) -> Result<usize> {
    let scale = f.scale_hint();
    if f.coeffs().iter().all(|c| c.is_negligible(scale, tol)) {
        return Err(Error::ZeroForm("multiplicity_at"));
    }
    let l = l.canonical();
    if l.u().is_zero() {
        let lead = f.coeffs().iter().take_while(|c| c.is_negligible(scale, tol)).count();
        return Ok(lead);
    }
    let alpha = -l.v().clone();
    let growth = alpha.magnitude().max(1.0).powi(f.degree() as i32);
    let mut coeffs: Vec<K> = f.coeffs().to_vec();
    let mut count = 0;
    while coeffs.len() > 1 {
        let mut quot = Vec::with_capacity(coeffs.len() - 1);
        let mut acc = K::zero();
        for c in &coeffs {
            acc = acc * &alpha + c;
            quot.push(acc.clone());
        }
        let rem = quot.pop().expect("nonempty");
        if !rem.is_negligible(scale * growth, tol) {
            break;
        }
        count += 1;
        coeffs = quot;
    }
    Ok(count)
}

/// `D_m(f)`: the gcd of all order-`(m − 1)` partial derivatives of `f`.
///
/// A linear form `ℓ` has `mult_ℓ(f) ≥ m` exactly when `ℓ | D_m(f)`. For
/// `m > deg f` no linear form qualifies and the unit form is returned.
pub fn high_multiplicity_locus<K: Field>(f: &BinaryForm<K>, m: usize) -> Result<BinaryForm<K>> {
    if f.is_zero() {
        return Err(Error::ZeroForm("high_multiplicity_locus"));
    }
    if m == 0 {
        return Err(Error::Invalid("multiplicity threshold must be at least 1".into()));
    }
    if m > f.degree() {
        return Ok(BinaryForm::one());
    }
    let partials: Vec<BinaryForm<K>> = (0..m).map(|a| f.partial(a, m - 1 - a)).collect();
    gcd_all(partials.iter())
}

/// Homogeneous Sylvester resultant; zero iff `f` and `g` share a linear factor.
pub fn resultant<K: Field>(f: &BinaryForm<K>, g: &BinaryForm<K>) -> Result<K> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroForm("resultant"));
    }
    Ok(sylvester_resultant(f.coeffs(), g.coeffs()))
}

/// Whether `g` divides `f` (every form divides the zero form).
pub fn divides<K: Field>(g: &BinaryForm<K>, f: &BinaryForm<K>) -> Result<bool> {
    if g.is_zero() {
        return Err(Error::ZeroForm("divides"));
    }
    if f.is_zero() {
        return Ok(true);
    }
    if g.degree() > f.degree() || g.y_multiplicity() > f.y_multiplicity() {
        return Ok(false);
    }
    let (_, r) = f.dehomogenize().div_rem(&g.dehomogenize());
    Ok(r.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary_forms::Var;
    use crate::field::Gq;

    fn form(c: &[i64]) -> BinaryForm<Gq> {
        BinaryForm::new(c.iter().map(|&v| Gq::from(v)).collect())
    }

    fn lin(u: i64, v: i64) -> LinearForm<Gq> {
        LinearForm::new(Gq::from(u), Gq::from(v)).unwrap()
    }

    fn fermat() -> BinaryForm<Gq> {
        let mut c = vec![0; 11];
        c[0] = 1;
        c[10] = 1;
        form(&c)
    }

    #[test]
    fn gcd_examples() {
        // ((x − y)²·x, (x − y)·y) → x − y
        let xmy = lin(1, -1).as_form();
        let f = xmy.pow(2).mul(&BinaryForm::x());
        let g = xmy.mul(&BinaryForm::y());
        assert_eq!(gcd(&f, &g).unwrap(), xmy);
        // Fermat and its x-derivative are coprime.
        let f = fermat();
        assert_eq!(gcd(&f, &f.derivative(Var::X)).unwrap(), BinaryForm::one());
        // x⁴y², x³y³ → x³y²
        let a = BinaryForm::monomial(Gq::one(), 4, 2);
        let b = BinaryForm::monomial(Gq::one(), 3, 3);
        assert_eq!(gcd(&a, &b).unwrap(), BinaryForm::monomial(Gq::one(), 3, 2));
        assert_eq!(gcd(&a.scale(&Gq::from(3)), &BinaryForm::zero(2)).unwrap(), a);
        assert_eq!(gcd(&BinaryForm::<Gq>::zero(2), &BinaryForm::zero(3)), Err(Error::GcdOfZeroForms));
    }

    #[test]
    fn squarefree_examples() {
        // x²y³(x + y)
        let f = BinaryForm::monomial(Gq::one(), 2, 3).mul(&lin(1, 1).as_form());
        let dec = squarefree_decomposition(&f).unwrap();
        assert_eq!(
            dec,
            vec![(lin(1, 1).as_form(), 1), (BinaryForm::x(), 2), (BinaryForm::y(), 3)]
        );
        assert_eq!(squarefree_decomposition(&fermat()).unwrap(), vec![(fermat(), 1)]);
        let q = form(&[1, 0, 1]).pow(5);
        assert_eq!(squarefree_decomposition(&q).unwrap(), vec![(form(&[1, 0, 1]), 5)]);
        assert!(squarefree_decomposition(&BinaryForm::<Gq>::zero(4)).is_err());
    }

    #[test]
    fn y_power_merges_with_equal_multiplicity() {
        // y²(x − y)² → single factor y(x − y) of multiplicity 2
        let f = BinaryForm::y().pow(2).mul(&lin(1, -1).as_form().pow(2));
        let dec = squarefree_decomposition(&f).unwrap();
        assert_eq!(dec, vec![(form(&[0, 1, -1]), 2)]);
    }

    #[test]
    fn distinct_factor_counts() {
        assert_eq!(distinct_linear_factor_count(&fermat()).unwrap(), 10);
        assert_eq!(distinct_linear_factor_count(&form(&[1, 0, 1]).pow(5)).unwrap(), 2);
        assert_eq!(distinct_linear_factor_count(&BinaryForm::monomial(Gq::one(), 4, 2)).unwrap(), 2);
    }

    #[test]
    fn multiplicity_examples() {
        let f = BinaryForm::monomial(Gq::one(), 2, 3).mul(&lin(1, 1).as_form());
        assert_eq!(multiplicity_at(&f, &LinearForm::y(), 0.0).unwrap(), 3);
        assert_eq!(multiplicity_at(&f, &LinearForm::x(), 0.0).unwrap(), 2);
        assert_eq!(multiplicity_at(&fermat(), &lin(1, -1), 0.0).unwrap(), 0);
        let g = lin(1, -1).as_form().pow(4).mul(&lin(1, 4).as_form());
        assert_eq!(multiplicity_at(&g, &lin(1, -1), 0.0).unwrap(), 4);
        assert_eq!(multiplicity_at(&g, &lin(2, 8), 0.0).unwrap(), 1);
        assert!(multiplicity_at(&BinaryForm::<Gq>::zero(3), &LinearForm::x(), 0.0).is_err());
    }

    #[test]
    fn high_multiplicity_locus_examples() {
        let f = BinaryForm::monomial(Gq::one(), 3, 3);
        assert_eq!(high_multiplicity_locus(&f, 3).unwrap(), BinaryForm::monomial(Gq::one(), 1, 1));
        assert_eq!(high_multiplicity_locus(&fermat(), 2).unwrap(), BinaryForm::one());
        let g = fermat().scale(&Gq::from(3));
        assert_eq!(high_multiplicity_locus(&g, 1).unwrap(), fermat());
        assert_eq!(high_multiplicity_locus(&f, 7).unwrap(), BinaryForm::one());
    }

    #[test]
    fn resultant_examples() {
        assert!(!resultant(&lin(1, -1).as_form(), &lin(1, 1).as_form()).unwrap().is_zero());
        let a = lin(1, -1).as_form().mul(&BinaryForm::x());
        let b = lin(1, -1).as_form().mul(&BinaryForm::y());
        assert!(resultant(&a, &b).unwrap().is_zero());
        // Sylvester determinant of x² + y² and x² − y²: 4 (independent hand expansion).
        assert_eq!(resultant(&form(&[1, 0, 1]), &form(&[1, 0, -1])).unwrap(), Gq::from(4));
        // Common factor at infinity (y | both).
        assert!(resultant(&form(&[1, 0]), &form(&[0, 1]).mul(&BinaryForm::y())).is_ok());
        assert!(resultant(&form(&[0, 1]), &form(&[0, 1, 1])).unwrap().is_zero());
    }
}
