//! Certified isolation of all complex roots of a squarefree rational
//! polynomial.
//!
//! Strategy: real roots come straight from Sturm bisection.  For complex
//! roots, write f(x + iy) = P(x, y) + i Q(x, y).  Eliminating y from (P, Q)
//! gives a polynomial whose roots are the pairwise midpoints
//! (z_i + z_j) / 2 of roots of f; it factors as c * f * T^2, and T is
//! recovered exactly by polynomial square root, keeping degrees at
//! n (n - 1) / 2 instead of n^2.  Eliminating x gives c * y^n * U(y^2),
//! whose positive roots bound the candidate imaginary parts.  Every
//! candidate rectangle (real-part interval) x (imaginary-part interval) is
//! then tested by a winding number computed from Cauchy indices along the
//! edges, which is exact.  All refinement follows canonical bisection paths
//! that do not depend on the requested width, so re-running with a smaller
//! width yields nested boxes.

use super::bivar::{
    integer_poly_sqrt, real_imag_parts, resultant_elim_x_hinted, resultant_elim_y_hinted, BiPoly,
};
use super::interval::{eval_poly_on_box, CInterval, RInterval};
use super::poly::Poly;
use super::rational::{grid_sqrt_above, grid_sqrt_below, rat, Rational};
use super::sturm::{
    cauchy_index, isolate_real_roots, refine_interval, split_point, Endpoint, SturmChain,
};
use super::LinalgError;
use num_traits::{Signed, Zero};

/// An axis-aligned rational rectangle certified to contain exactly one root.
#[derive(Clone, Debug, PartialEq)]
pub struct RootBox {
    pub re_lo: Rational,
    pub re_hi: Rational,
    pub im_lo: Rational,
    pub im_hi: Rational,
    pub is_real: bool,
}

impl RootBox {
    pub fn re_mid(&self) -> Rational {
        (&self.re_lo + &self.re_hi) / rat(2)
    }

    pub fn im_mid(&self) -> Rational {
        if self.is_real {
            Rational::zero()
        } else {
            (&self.im_lo + &self.im_hi) / rat(2)
        }
    }

    pub fn to_cinterval(&self) -> CInterval {
        CInterval::new(
            RInterval::new(self.re_lo.clone(), self.re_hi.clone()),
            RInterval::new(self.im_lo.clone(), self.im_hi.clone()),
        )
    }

    /// True if the open rectangles share no point.  Boxes produced by
    /// bisection may share a boundary value; roots are always interior.
    pub fn disjoint(&self, other: &RootBox) -> bool {
        self.re_hi <= other.re_lo
            || other.re_hi <= self.re_lo
            || self.im_hi <= other.im_lo
            || other.im_hi <= self.im_lo
    }

    /// True if `self` lies inside `other` (componentwise containment).
    pub fn nested_in(&self, other: &RootBox) -> bool {
        self.re_lo >= other.re_lo
            && self.re_hi <= other.re_hi
            && self.im_lo >= other.im_lo
            && self.im_hi <= other.im_hi
    }
}

/// All roots of a squarefree polynomial: boxes in canonical order plus the
/// complex-conjugation pairing (an index involution; real boxes are fixed).
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoots {
    pub boxes: Vec<RootBox>,
    pub conj: Vec<usize>,
}

impl IsolatedRoots {
    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }
}

/// Isolates all complex roots of a squarefree polynomial in pairwise
/// disjoint boxes of side at most `width`, in canonical order: ascending
/// real part, ties broken by ascending imaginary part.
pub fn isolate_roots(f: &Poly, width: &Rational) -> Result<IsolatedRoots, LinalgError> {
    if !width.is_positive() {
        return Err(LinalgError::InvalidWidth);
    }
    let n = f.degree().ok_or(LinalgError::DegreeTooSmall)?;
    if n < 1 {
        return Err(LinalgError::DegreeTooSmall);
    }
    if !f.is_squarefree() {
        return Err(LinalgError::NotSquarefree);
    }
    // Scale to primitive integer coefficients (same roots) so resultant
    // samples stay in integer arithmetic.
    let f = &Poly::from_bigint(&f.to_primitive_int());
    let chain_f = SturmChain::new(f)?;
    let real_ivs = isolate_real_roots(f)?;
    if real_ivs.len() == n {
        // All roots real: no elimination needed.
        let h = width / rat(2);
        let boxes: Vec<RootBox> = real_ivs
            .into_iter()
            .map(|(lo, hi)| {
                let (rlo, rhi) = refine_interval(&chain_f, lo, hi, width);
                RootBox {
                    re_lo: rlo,
                    re_hi: rhi,
                    im_lo: -&h,
                    im_hi: h.clone(),
                    is_real: true,
                }
            })
            .collect();
        let conj = (0..boxes.len()).collect();
        return Ok(IsolatedRoots { boxes, conj });
    }

    let (p, q) = real_imag_parts(f);

    // Candidate real parts: roots of f together with roots of T, merged
    // into one squarefree polynomial so isolation orders them globally.
    // The eliminated resultant has degree exactly n^2: the curves P = 0 and
    // Q = 0 have degree n and share no point at infinity, so Bezout gives
    // n^2 finite intersections counted by the resultant.
    let r_real = if n % 2 == 0 {
        resultant_elim_y_hinted(&p, &q, n * n)?
    } else {
        resultant_elim_y_hinted(&q, &p, n * n)?
    };
    let quot = r_real.exact_div(f)?;
    let t2 = quot.monic();
    let t = integer_poly_sqrt(&t2).ok_or_else(|| {
        LinalgError::Internal("midpoint resultant was not a perfect square".into())
    })?;
    let sf_t = t.squarefree_part()?;
    let f_monic = f.monic();
    let extra = sf_t.exact_div(&f_monic.gcd(&sf_t))?;
    let x_poly = &f_monic * &extra;
    if !x_poly.is_squarefree() {
        return Err(LinalgError::Internal(
            "merged real-part polynomial not squarefree".into(),
        ));
    }
    let chain_x = SturmChain::new(&x_poly)?;
    let x_ivs = isolate_real_roots(&x_poly)?;

    // Candidate absolute imaginary parts: positive roots of U(y^2), where
    // eliminating x yields c * y^n * U(y^2).
    let r_imag = resultant_elim_x_hinted(&p, &q, n * n)?;
    let u = strip_even(&r_imag, n)?;
    if u.coeff(0).is_zero() {
        // A zero root of U would mean two equal roots of f.
        return Err(LinalgError::Internal(
            "imaginary-part polynomial vanished at zero for a squarefree input".into(),
        ));
    }
    let sf_u = u.squarefree_part()?;
    let chain_u = SturmChain::new(&sf_u)?;
    let u_ivs = positive_intervals(&chain_u, isolate_real_roots(&sf_u)?);
    if u_ivs.is_empty() {
        return Err(LinalgError::Internal(
            "complex roots exist but no positive imaginary candidates found".into(),
        ));
    }
    let y_init = initial_y_intervals(&chain_u, &u_ivs)?;
    let y_min = y_init[0].0.clone();

    // Which x-interval holds each real root of f (both lists are sorted).
    let mut real_at: Vec<Option<usize>> = vec![None; x_ivs.len()];
    let mut next_real = 0usize;
    for (i, (lo, hi)) in x_ivs.iter().enumerate() {
        if chain_f.count(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(hi.clone())) == 1 {
            real_at[i] = Some(next_real);
            next_real += 1;
        }
    }
    if next_real != real_ivs.len() {
        return Err(LinalgError::Internal(
            "real roots did not map onto real-part intervals".into(),
        ));
    }

    // Winding test for every surviving (real-part, imaginary-part) pair.
    let mut accepted: Vec<Vec<usize>> = vec![Vec::new(); x_ivs.len()];
    let mut pair_count = 0usize;
    for (i, (xl, xh)) in x_ivs.iter().enumerate() {
        for (k, (yl, yh)) in y_init.iter().enumerate() {
            let cand = CInterval::new(
                RInterval::new(xl.clone(), xh.clone()),
                RInterval::new(yl.clone(), yh.clone()),
            );
            if !eval_poly_on_box(f, &cand).contains_zero() {
                continue;
            }
            let corridors = Corridors {
                x_left: if i == 0 { xl - rat(1) } else { x_ivs[i - 1].1.clone() },
                x_right: if i + 1 == x_ivs.len() {
                    xh + rat(1)
                } else {
                    x_ivs[i + 1].0.clone()
                },
                y_down: if k == 0 { Rational::zero() } else { y_init[k - 1].1.clone() },
                y_up: if k + 1 == y_init.len() {
                    yh + rat(1)
                } else {
                    y_init[k + 1].0.clone()
                },
            };
            let w = certified_winding(&p, &q, xl, xh, yl, yh, &corridors)?;
            match w {
                0 => {}
                1 => {
                    accepted[i].push(k);
                    pair_count += 1;
                }
                _ => {
                    return Err(LinalgError::Internal(format!(
                        "winding number {} in a candidate box that isolates at most one root",
                        w
                    )))
                }
            }
        }
    }
    if real_ivs.len() + 2 * pair_count != n {
        return Err(LinalgError::Internal(format!(
            "root count mismatch: {} real + 2*{} complex != degree {}",
            real_ivs.len(),
            pair_count,
            n
        )));
    }

    // Assemble boxes in canonical order.  Within one real-part interval the
    // order is: negative imaginary parts (large |Im| first), the real root,
    // then positive imaginary parts.
    let h = {
        let m = if *width < y_min { width.clone() } else { y_min.clone() };
        m / rat(2)
    };
    let mut boxes = Vec::with_capacity(n);
    let mut upper_pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x_ivs.len()];
    let mut lower_pos: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x_ivs.len()];
    let mut x_refined: Vec<Option<(Rational, Rational)>> = vec![None; x_ivs.len()];
    let mut y_refined: Vec<Option<(Rational, Rational)>> = vec![None; y_init.len()];
    for i in 0..x_ivs.len() {
        if accepted[i].is_empty() && real_at[i].is_none() {
            continue;
        }
        let (rxl, rxh) = x_refined[i]
            .get_or_insert_with(|| {
                refine_interval(&chain_x, x_ivs[i].0.clone(), x_ivs[i].1.clone(), width)
            })
            .clone();
        for &k in accepted[i].iter().rev() {
            let (ryl, ryh) = y_refined[k]
                .get_or_insert_with(|| refine_y(&chain_u, &y_init[k], width))
                .clone();
            lower_pos[i].push((k, boxes.len()));
            boxes.push(RootBox {
                re_lo: rxl.clone(),
                re_hi: rxh.clone(),
                im_lo: -&ryh,
                im_hi: -&ryl,
                is_real: false,
            });
        }
        if let Some(r) = real_at[i] {
            // Shrink the root's own isolating interval until it sits inside
            // the merged real-part interval, so that re-interval overlap
            // means equal real parts across all boxes.
            let (mut lo, mut hi) = real_ivs[r].clone();
            while lo < x_ivs[i].0 || hi > x_ivs[i].1 {
                let (nlo, nhi) = one_bisection_step(&chain_f, lo, hi);
                lo = nlo;
                hi = nhi;
            }
            let (rlo, rhi) = refine_interval(&chain_f, lo, hi, width);
            boxes.push(RootBox {
                re_lo: rlo,
                re_hi: rhi,
                im_lo: -&h,
                im_hi: h.clone(),
                is_real: true,
            });
        }
        for &k in accepted[i].iter() {
            let (ryl, ryh) = y_refined[k]
                .get_or_insert_with(|| refine_y(&chain_u, &y_init[k], width))
                .clone();
            upper_pos[i].push((k, boxes.len()));
            boxes.push(RootBox {
                re_lo: rxl.clone(),
                re_hi: rxh.clone(),
                im_lo: ryl.clone(),
                im_hi: ryh.clone(),
                is_real: false,
            });
        }
    }
    if boxes.len() != n {
        return Err(LinalgError::Internal(
            "assembled box count does not match degree".into(),
        ));
    }
    let mut conj: Vec<usize> = (0..n).collect();
    for i in 0..x_ivs.len() {
        for &(k, pos_low) in &lower_pos[i] {
            let &(_, pos_up) = upper_pos[i]
                .iter()
                .find(|&&(ku, _)| ku == k)
                .ok_or_else(|| LinalgError::Internal("unmatched conjugate box".into()))?;
            conj[pos_low] = pos_up;
            conj[pos_up] = pos_low;
        }
    }
    Ok(IsolatedRoots { boxes, conj })
}

/// Checks r = c y^n (even polynomial) and returns U with r = c y^n U(y^2).
fn strip_even(r: &Poly, n: usize) -> Result<Poly, LinalgError> {
    let d = r.degree().ok_or_else(|| {
        LinalgError::Internal("imaginary-part resultant vanished identically".into())
    })?;
    if d < n {
        return Err(LinalgError::Internal(
            "imaginary-part resultant has too small a degree".into(),
        ));
    }
    for k in 0..n {
        if !r.coeff(k).is_zero() {
            return Err(LinalgError::Internal(
                "imaginary-part resultant misses the expected zero-root multiplicity".into(),
            ));
        }
    }
    let mut u = Vec::with_capacity((d - n) / 2 + 1);
    for k in n..=d {
        let c = r.coeff(k);
        if (k - n) % 2 == 1 {
            if !c.is_zero() {
                return Err(LinalgError::Internal(
                    "imaginary-part resultant is not even after stripping".into(),
                ));
            }
        } else {
            u.push(c);
        }
    }
    Ok(Poly::new(u))
}

/// Keeps only intervals whose root is strictly positive, refining any
/// interval that straddles zero until its sign is determined.  Requires
/// that zero is not a root of the chain polynomial.
fn positive_intervals(
    chain: &SturmChain,
    ivs: Vec<(Rational, Rational)>,
) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for (mut lo, mut hi) in ivs {
        loop {
            if !lo.is_negative() {
                // Root lies in (lo, hi) with lo >= 0, so it is positive.
                out.push((lo, hi));
                break;
            }
            if !hi.is_positive() {
                // Root below zero: discard.
                break;
            }
            let (nlo, nhi) = one_bisection_step(chain, lo, hi);
            lo = nlo;
            hi = nhi;
        }
    }
    out
}

/// One canonical bisection step of an isolating interval.
fn one_bisection_step(chain: &SturmChain, lo: Rational, hi: Rational) -> (Rational, Rational) {
    let c = split_point(chain, &lo, &hi);
    if chain.count(&Endpoint::Finite(lo.clone()), &Endpoint::Finite(c.clone())) == 1 {
        (lo, c)
    } else {
        (c, hi)
    }
}

/// Canonical initial y-intervals, one per positive root of U: a dyadic-grid
/// square-root enclosure of the u-interval, grown to isolate and made
/// pairwise disjoint.  Independent of the requested output width.
fn initial_y_intervals(
    chain_u: &SturmChain,
    u_ivs: &[(Rational, Rational)],
) -> Result<Vec<(Rational, Rational)>, LinalgError> {
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(u_ivs.len());
    for (ulo0, uhi0) in u_ivs.iter().cloned() {
        let mut s = 4u32;
        let (mut ulo, mut uhi) = (ulo0, uhi0);
        loop {
            if s > 4096 {
                return Err(LinalgError::Internal(
                    "imaginary-part enclosure failed to stabilize".into(),
                ));
            }
            let ylo = grid_sqrt_below(&ulo, s);
            let yhi = grid_sqrt_above(&uhi, s);
            if ylo.is_positive()
                && chain_u.sign_at(&(&ylo * &ylo)) != 0
                && chain_u.sign_at(&(&yhi * &yhi)) != 0
                && count_in_squares(chain_u, &ylo, &yhi) == 1
            {
                out.push((ylo, yhi));
                break;
            }
            let (nlo, nhi) = one_bisection_step(chain_u, ulo, uhi);
            ulo = nlo;
            uhi = nhi;
            s += 1;
        }
    }
    // Disjointness: consecutive enclosures may overlap after the sqrt
    // rounding; shrink both canonically until they separate.
    for k in 1..out.len() {
        let mut guard = 0;
        while out[k - 1].1 >= out[k].0 {
            guard += 1;
            if guard > 4096 {
                return Err(LinalgError::Internal(
                    "imaginary-part enclosures failed to separate".into(),
                ));
            }
            out[k - 1] = refine_y_step(chain_u, &out[k - 1]);
            out[k] = refine_y_step(chain_u, &out[k]);
        }
    }
    Ok(out)
}

/// Number of roots of U in the open u-interval (ylo^2, yhi^2).
fn count_in_squares(chain_u: &SturmChain, ylo: &Rational, yhi: &Rational) -> usize {
    chain_u.count(
        &Endpoint::Finite(ylo * ylo),
        &Endpoint::Finite(yhi * yhi),
    )
}

/// One canonical bisection step on a y-interval (0 < ylo < yhi), choosing
/// the half whose squared interval still holds the u-root.
fn refine_y_step(chain_u: &SturmChain, iv: &(Rational, Rational)) -> (Rational, Rational) {
    let (ylo, yhi) = iv;
    let two = rat(2);
    let mut mid = (ylo + yhi) / &two;
    if chain_u.sign_at(&(&mid * &mid)) == 0 {
        let mut step = (yhi - ylo) / rat(16);
        loop {
            let c = &mid + &step;
            if &c < yhi && chain_u.sign_at(&(&c * &c)) != 0 {
                mid = c;
                break;
            }
            step /= &two;
        }
    }
    if count_in_squares(chain_u, ylo, &mid) == 1 {
        (ylo.clone(), mid)
    } else {
        (mid, yhi.clone())
    }
}

/// Refines a canonical y-interval to the requested width.
fn refine_y(
    chain_u: &SturmChain,
    iv: &(Rational, Rational),
    width: &Rational,
) -> (Rational, Rational) {
    let mut cur = iv.clone();
    while &(&cur.1 - &cur.0) > width {
        cur = refine_y_step(chain_u, &cur);
    }
    cur
}

/// Outward-expansion limits for winding degeneracy nudges: open corridors
/// known to contain no candidate real or imaginary part.
struct Corridors {
    x_left: Rational,
    x_right: Rational,
    y_down: Rational,
    y_up: Rational,
}

/// Winding number of f around the rectangle, with deterministic outward
/// nudges when an edge or corner degenerates.  Expanding a side into its
/// root-free corridor never changes the count of enclosed roots.
fn certified_winding(
    p: &BiPoly,
    q: &BiPoly,
    xl0: &Rational,
    xh0: &Rational,
    yl0: &Rational,
    yh0: &Rational,
    corridors: &Corridors,
) -> Result<i64, LinalgError> {
    let (mut xl, mut xh) = (xl0.clone(), xh0.clone());
    let (mut yl, mut yh) = (yl0.clone(), yh0.clone());
    let two = rat(2);
    for _attempt in 0..256 {
        let mut nudged = false;
        // Vertical lines must not annihilate P identically, and corners
        // must not be zeros of P.
        if p.eval_x_at(&xl).is_zero()
            || p.eval_at(&xl, &yl).is_zero()
            || p.eval_at(&xl, &yh).is_zero()
        {
            xl = (&xl + &corridors.x_left) / &two;
            nudged = true;
        }
        if p.eval_x_at(&xh).is_zero()
            || p.eval_at(&xh, &yl).is_zero()
            || p.eval_at(&xh, &yh).is_zero()
        {
            xh = (&xh + &corridors.x_right) / &two;
            nudged = true;
        }
        if p.eval_y_at(&yl).is_zero() {
            yl = (&yl + &corridors.y_down) / &two;
            nudged = true;
        }
        if p.eval_y_at(&yh).is_zero() {
            yh = (&yh + &corridors.y_up) / &two;
            nudged = true;
        }
        if nudged {
            continue;
        }
        return winding_number(p, q, &xl, &xh, &yl, &yh);
    }
    Err(LinalgError::Internal(
        "could not find a nondegenerate winding contour".into(),
    ))
}

/// Winding number of (P + iQ) along the counterclockwise boundary of the
/// rectangle, as -1/2 of the sum of signed Cauchy indices over the edges.
fn winding_number(
    p: &BiPoly,
    q: &BiPoly,
    xl: &Rational,
    xh: &Rational,
    yl: &Rational,
    yh: &Rational,
) -> Result<i64, LinalgError> {
    let mut total = 0i64;
    // Bottom edge, increasing x.
    total += cauchy_index(&p.eval_y_at(yl), &q.eval_y_at(yl), xl, xh)?;
    // Right edge, increasing y.
    total += cauchy_index(&p.eval_x_at(xh), &q.eval_x_at(xh), yl, yh)?;
    // Top edge, decreasing x.
    total -= cauchy_index(&p.eval_y_at(yh), &q.eval_y_at(yh), xl, xh)?;
    // Left edge, decreasing y.
    total -= cauchy_index(&p.eval_x_at(xl), &q.eval_x_at(xl), yl, yh)?;
    if total % 2 != 0 {
        return Err(LinalgError::Internal(
            "odd edge index sum around a closed contour".into(),
        ));
    }
    Ok(-total / 2)
}

#[cfg(test)]
mod tests {
    use super::super::rational::{rat, ratio};
    use super::*;

    fn check_shape(f: &Poly, roots: &IsolatedRoots, width: &Rational) {
        let n = f.degree().unwrap();
        assert_eq!(roots.boxes.len(), n);
        assert_eq!(roots.conj.len(), n);
        for b in &roots.boxes {
            assert!(&(&b.re_hi - &b.re_lo) <= width);
            assert!(&(&b.im_hi - &b.im_lo) <= width);
            // Realness flag agrees with the imaginary interval.
            let spans_zero = !b.im_lo.is_positive() && !b.im_hi.is_negative();
            assert_eq!(b.is_real, spans_zero);
        }
        // Pairwise disjoint.
        for i in 0..n {
            for j in i + 1..n {
                assert!(roots.boxes[i].disjoint(&roots.boxes[j]), "boxes {} {} overlap", i, j);
            }
        }
        // Canonical order: overlapping re-intervals signal equal real parts
        // (then imaginary parts must ascend); otherwise the real intervals
        // themselves must ascend.
        for w in roots.boxes.windows(2) {
            let re_overlap = w[0].re_lo < w[1].re_hi && w[1].re_lo < w[0].re_hi;
            if re_overlap {
                assert!(w[0].im_hi <= w[1].im_lo);
            } else {
                assert!(w[0].re_hi <= w[1].re_lo);
            }
        }
        // Conjugation involution, fixed points exactly the real boxes.
        for i in 0..n {
            assert_eq!(roots.conj[roots.conj[i]], i);
            if roots.boxes[i].is_real {
                assert_eq!(roots.conj[i], i);
            } else {
                let j = roots.conj[i];
                assert_ne!(i, j);
                let bi = &roots.boxes[i];
                let bj = &roots.boxes[j];
                assert_eq!(bi.re_lo, bj.re_lo);
                assert_eq!(bi.im_lo, -&bj.im_hi);
                assert_eq!(bi.im_hi, -&bj.im_lo);
            }
        }
    }

    #[test]
    fn isolates_pure_imaginary_pair() {
        // x^2 + 1: boxes around -i and i.
        let f = Poly::from_i64(&[1, 0, 1]);
        let w = ratio(1, 8);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        assert!(!roots.boxes[0].is_real && !roots.boxes[1].is_real);
        // First box has negative imaginary part around -1.
        assert!(roots.boxes[0].im_hi < rat(0));
        assert!(roots.boxes[0].im_lo <= rat(-1) && roots.boxes[0].im_hi >= rat(-1));
        assert!(roots.boxes[1].im_lo <= rat(1) && roots.boxes[1].im_hi >= rat(1));
        assert_eq!(roots.conj, vec![1, 0]);
    }

    #[test]
    fn isolates_two_real_roots() {
        let f = Poly::from_i64(&[-2, 0, 1]);
        let w = ratio(1, 16);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        assert!(roots.boxes.iter().all(|b| b.is_real));
        assert!(roots.boxes[0].re_hi < rat(0));
        assert!(roots.boxes[1].re_lo > rat(0));
        assert_eq!(roots.conj, vec![0, 1]);
    }

    #[test]
    fn isolates_mixed_cubic() {
        // x^3 - 1: root 1 and the pair -1/2 +- i sqrt(3)/2.
        let f = Poly::from_i64(&[-1, 0, 0, 1]);
        let w = ratio(1, 32);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        assert!(!roots.boxes[0].is_real);
        assert!(!roots.boxes[1].is_real);
        assert!(roots.boxes[2].is_real);
        // Complex pair around real part -1/2.
        assert!(roots.boxes[0].re_lo <= ratio(-1, 2) && roots.boxes[0].re_hi >= ratio(-1, 2));
        assert_eq!(roots.conj, vec![1, 0, 2]);
        // sqrt(3)/2 is about 0.866.
        assert!(roots.boxes[1].im_lo < ratio(87, 100));
        assert!(roots.boxes[1].im_hi > ratio(86, 100));
    }

    #[test]
    fn orders_equal_real_parts_by_imaginary() {
        // x^4 + 5x^2 + 5: all roots purely imaginary, two conjugate pairs.
        let f = Poly::from_i64(&[5, 0, 5, 0, 1]);
        let w = ratio(1, 16);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        assert!(roots.boxes.iter().all(|b| !b.is_real));
        // Imaginary parts sorted ascending: -1.9, -1.17, 1.17, 1.9 roughly.
        assert!(roots.boxes[0].im_hi < roots.boxes[1].im_lo);
        assert!(roots.boxes[1].im_hi < roots.boxes[2].im_lo);
        assert!(roots.boxes[2].im_hi < roots.boxes[3].im_lo);
        assert_eq!(roots.conj, vec![3, 2, 1, 0]);
        // All real parts straddle 0... they are exactly 0, so the boxes
        // bracket it.
        for b in &roots.boxes {
            assert!(b.re_lo <= rat(0) && b.re_hi >= rat(0));
        }
    }

    #[test]
    fn nesting_under_width_halving() {
        let f = Poly::from_i64(&[-1, 0, -1, 1, 1, 0, 1]);
        let w1 = ratio(1, 4);
        let w2 = ratio(1, 8);
        let w3 = ratio(1, 64);
        let r1 = isolate_roots(&f, &w1).unwrap();
        let r2 = isolate_roots(&f, &w2).unwrap();
        let r3 = isolate_roots(&f, &w3).unwrap();
        check_shape(&f, &r1, &w1);
        check_shape(&f, &r2, &w2);
        check_shape(&f, &r3, &w3);
        assert_eq!(r1.conj, r2.conj);
        assert_eq!(r2.conj, r3.conj);
        for ((a, b), c) in r1.boxes.iter().zip(&r2.boxes).zip(&r3.boxes) {
            assert!(b.nested_in(a));
            assert!(c.nested_in(b));
            assert_eq!(a.is_real, b.is_real);
            assert_eq!(b.is_real, c.is_real);
        }
    }

    #[test]
    fn quartic_with_real_and_complex_roots() {
        // x^4 - x^3 - 1 has two real roots and one conjugate pair.
        let f = Poly::from_i64(&[-1, 0, 0, -1, 1]);
        let w = ratio(1, 16);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        let real_count = roots.boxes.iter().filter(|b| b.is_real).count();
        assert_eq!(real_count, 2);
    }

    #[test]
    fn cubic_with_roots_near_axes() {
        let f = Poly::from_i64(&[1, 1, 0, 1]);
        let w = ratio(1, 32);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        assert_eq!(roots.boxes.iter().filter(|b| b.is_real).count(), 1);
    }

    #[test]
    fn shared_real_part_between_real_root_and_pair() {
        // x^3 + x = x (x^2 + 1): roots -i, 0, i all share real part 0, and
        // the imaginary-part candidates include a spurious value 1/2 that
        // the winding test must reject.
        let f = Poly::from_i64(&[0, 1, 0, 1]);
        let w = ratio(1, 16);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        assert!(!roots.boxes[0].is_real);
        assert!(roots.boxes[1].is_real);
        assert!(!roots.boxes[2].is_real);
        assert_eq!(roots.conj, vec![2, 1, 0]);
        assert!(roots.boxes[2].im_lo <= rat(1) && roots.boxes[2].im_hi >= rat(1));
    }

    #[test]
    fn cube_root_of_two() {
        let f = Poly::from_i64(&[-2, 0, 0, 1]);
        let w = ratio(1, 64);
        let roots = isolate_roots(&f, &w).unwrap();
        check_shape(&f, &roots, &w);
        // Complex pair first (real part about -0.63), then the real root.
        assert!(!roots.boxes[0].is_real && !roots.boxes[1].is_real);
        assert!(roots.boxes[2].is_real);
        let cbrt2_lo = ratio(125, 100);
        let cbrt2_hi = ratio(127, 100);
        assert!(roots.boxes[2].re_hi >= cbrt2_lo && roots.boxes[2].re_lo <= cbrt2_hi);
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = Poly::from_i64(&[1, 2, 1]);
        assert_eq!(
            isolate_roots(&f, &ratio(1, 4)),
            Err(LinalgError::NotSquarefree)
        );
        let g = Poly::from_i64(&[-2, 0, 1]);
        assert_eq!(isolate_roots(&g, &rat(0)), Err(LinalgError::InvalidWidth));
        assert_eq!(
            isolate_roots(&Poly::from_i64(&[5]), &ratio(1, 4)),
            Err(LinalgError::DegreeTooSmall)
        );
    }
}

#[cfg(test)]
mod stress {
    use super::super::rational::ratio;
    use super::*;

    #[test]
    fn degree_eight_polynomials_isolate_all_roots() {
        let polys = [
            Poly::from_i64(&[3, -1, 4, 1, -5, 9, -2, 6, 5]),
            Poly::from_i64(&[-7, 2, 0, 1, 3, -4, 1, 0, 2]),
            Poly::from_i64(&[1, 1, 1, 1, 1, 1, 1, 1, 1]),
            Poly::from_i64(&[-2, 5, -1, -3, 2, 0, 4, -1, 1]),
        ];
        let w = ratio(1, 32);
        for f in &polys {
            let r = isolate_roots(f, &w).unwrap();
            assert_eq!(r.boxes.len(), 8);
        }
    }
}
