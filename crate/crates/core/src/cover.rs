//! Orbit counting for cyclic branched covers.
//!
//! Everything here lives in `Z/d` for a machine-sized degree `d`: a cone
//! point of order `o` with unit `u` maps the loop around it to the image
//! `(d/o)*u mod d`, and counting preimage components or boundary circles
//! reduces to gcd arithmetic with those images. The functions stay in
//! `u64` (with `u128` intermediates) and refuse inputs whose counts
//! would not fit, rather than switching to big integers: the diagram
//! calculus is the exact-arithmetic lane, this module is the counting
//! lane.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

fn mul_fit(a: u64, b: u64, what: &str) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Invalid(format!("{what} exceeds the machine counting range")))
}

/// One branch point: its cone order, the chosen unit, and the resulting
/// image of the loop around it in `Z/d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ConePoint {
    order: u64,
    unit: u64,
    image: u64,
}

/// A `d`-fold cyclic cover of the sphere branched over marked points.
///
/// Invariants established at construction: every cone order divides the
/// degree, every unit is coprime to its order, and every image has exact
/// order equal to its cone order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCoverSpec {
    degree: u64,
    points: Vec<ConePoint>,
}

impl CyclicCoverSpec {
    pub fn new(degree: u64, points: &[(u64, u64)]) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("covering degree must be positive".to_owned()));
        }
        let mut resolved = Vec::with_capacity(points.len());
        for &(order, unit) in points {
            if order == 0 || degree % order != 0 {
                return Err(Error::ConeOrderDoesNotDivide { order, degree });
            }
            if unit.gcd(&order) != 1 {
                return Err(Error::UnitNotCoprime { unit, order });
            }
            let unit = if order == 1 { 0 } else { unit % order };
            let image =
                ((u128::from(degree / order) * u128::from(unit)) % u128::from(degree)) as u64;
            if degree / image.gcd(&degree) != order {
                return Err(Error::Internal(format!(
                    "image {image} does not have exact order {order} in Z/{degree}"
                )));
            }
            resolved.push(ConePoint { order, unit, image });
        }
        Ok(CyclicCoverSpec { degree, points: resolved })
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn cone_orders(&self) -> Vec<u64> {
        self.points.iter().map(|p| p.order).collect()
    }

    pub fn images(&self) -> Vec<u64> {
        self.points.iter().map(|p| p.image).collect()
    }

    /// Over a closed base the loop images must sum to zero in `Z/d`.
    pub fn is_closed_consistent(&self) -> bool {
        let sum: u128 = self.points.iter().map(|p| u128::from(p.image)).sum();
        sum % u128::from(self.degree) == 0
    }

    /// The total space is connected exactly when the images generate
    /// all of `Z/d`.
    pub fn is_connected(&self) -> bool {
        let g = self.points.iter().fold(self.degree, |acc, p| acc.gcd(&p.image));
        g == 1
    }

    /// Euler characteristic of the total space over a closed sphere
    /// base: `2d - sum(d - d/o_i)`.
    pub fn euler_characteristic(&self) -> Result<i64> {
        let d = i128::from(self.degree);
        let deficiency: i128 =
            self.points.iter().map(|p| d - d / i128::from(p.order)).sum();
        i64::try_from(2 * d - deficiency)
            .map_err(|_| Error::Invalid("Euler characteristic exceeds i64".to_owned()))
    }

    /// Genus of the connected closed total space.
    pub fn closed_genus(&self) -> Result<u64> {
        if !self.is_closed_consistent() {
            return Err(Error::UnbalancedClosedCover);
        }
        if !self.is_connected() {
            return Err(Error::Invalid(
                "cover is disconnected, genus of the total space is undefined".to_owned(),
            ));
        }
        let chi = self.euler_characteristic()?;
        if chi % 2 != 0 || chi > 2 {
            return Err(Error::Internal(format!(
                "closed surface Euler characteristic {chi} is not of the form 2 - 2g"
            )));
        }
        Ok(((2 - i128::from(chi)) / 2) as u64)
    }
}

/// Claimed count of boundary circles over one disk side carrying cone
/// orders `a` and `b`: `gcd(a, b)` per component. The claim holds per
/// connected component only for compatible unit choices; see
/// [`DiskCoverCounts::matches_claimed_gcd`] for the computed verdict.
pub fn boundary_components(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// What actually sits over a disk with two cone points in a `d`-fold
/// cyclic cover.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskCoverCounts {
    /// Connected components of the preimage of the disk.
    pub components: u64,
    /// Circles in the preimage of the disk's boundary, over all
    /// components.
    pub boundary_circles: u64,
    /// Circles per component; always a whole number.
    pub per_component: u64,
    /// Whether `per_component` equals the claimed `gcd(a, b)`.
    pub matches_claimed_gcd: bool,
}

/// Counts the preimage of a disk whose interior carries cone points of
/// orders `a` and `b` with units `unit_a` and `unit_b`, inside a
/// `d`-fold cyclic cover.
///
/// Components correspond to cosets of the subgroup generated by the two
/// images; boundary circles to cycles of translation by their sum.
pub fn disk_side_counts(
    degree: u64,
    a: u64,
    b: u64,
    unit_a: u64,
    unit_b: u64,
) -> Result<DiskCoverCounts> {
    let spec = CyclicCoverSpec::new(degree, &[(a, unit_a), (b, unit_b)])?;
    let images = spec.images();
    let (alpha, beta) = (images[0], images[1]);

    let components = alpha.gcd(&beta).gcd(&degree);
    let gamma = ((u128::from(alpha) + u128::from(beta)) % u128::from(degree)) as u64;
    let boundary_circles = gamma.gcd(&degree);

    // the subgroup generated by alpha and beta has order lcm(a, b)
    let lcm = (u128::from(a) / u128::from(a.gcd(&b)) * u128::from(b)) as u64;
    if components != degree / lcm || boundary_circles % components != 0 {
        return Err(Error::Internal(format!(
            "orbit counts {components}/{boundary_circles} violate subgroup structure for \
             degree {degree}, orders {a}, {b}"
        )));
    }
    let per_component = boundary_circles / components;
    let claimed = a.gcd(&b);
    if claimed == 1 && per_component != 1 {
        return Err(Error::Internal(
            "coprime cone orders must give one boundary circle per component".to_owned(),
        ));
    }
    Ok(DiskCoverCounts {
        components,
        boundary_circles,
        per_component,
        matches_claimed_gcd: per_component == claimed,
    })
}

/// `(8n-1)(8n-2)`, the degree of the cover in which the separating
/// curve of the `n`-th family member is lifted.
pub fn covering_degree(n: u32) -> Result<u64> {
    if n < 1 {
        return Err(Error::FamilyIndex);
    }
    let n = u64::from(n);
    mul_fit(8 * n - 1, 8 * n - 2, "covering degree")
}

/// The branch data of the `n`-th cover: degree `(8n-1)(8n-2)`, cone
/// orders `2, 8n-1` on one side of the separating curve and
/// `8n-2, (8n-1)(4n-1)` on the other, with the last unit forced by the
/// closed-base balance condition.
fn lambda_spec(n: u32, u2: u64, u3: u64) -> Result<(CyclicCoverSpec, [u64; 4])> {
    let d = covering_degree(n)?;
    let n64 = u64::from(n);
    let (p, q) = (8 * n64 - 1, 8 * n64 - 2);
    let o4 = d / 2;

    let image = |order: u64, unit: u64| -> u64 {
        ((u128::from(d / order) * u128::from(unit)) % u128::from(d)) as u64
    };
    let (a1, a2, a3) = (d / 2, image(p, u2), image(q, u3));
    let s = ((u128::from(a1) + u128::from(a2) + u128::from(a3)) % u128::from(d)) as u64;
    let t = (d - s) % d;
    if t % 2 != 0 {
        return Err(Error::Internal(format!(
            "balance defect {t} is odd for degree {d}, no unit closes the cover"
        )));
    }
    let u4 = (t / 2) % o4;
    let spec = CyclicCoverSpec::new(d, &[(2, 1), (p, u2), (q, u3), (o4, u4)])?;
    if !spec.is_closed_consistent() {
        return Err(Error::Internal("forced unit fails to balance the cover".to_owned()));
    }
    let a4 = spec.images()[3];
    Ok((spec, [a1, a2, a3, a4]))
}

/// Piece and curve counts for the lifted separating curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCountReport {
    pub degree: u64,
    /// Components of the cover over the side with cone orders 2, 8n-1.
    pub components_plus: u64,
    /// Components over the side with cone orders 8n-2, (8n-1)(4n-1).
    pub components_minus: u64,
    /// Circles over the separating curve itself.
    pub curves: u64,
    /// Total pieces the lifted curves cut the fiber surface into.
    pub pieces: u64,
    /// Genus of the connected closed fiber surface.
    pub genus: u64,
}

/// Counts the lift of the separating curve with the canonical units
/// `u2 = u3 = 1`.
pub fn lambda_lift(n: u32) -> Result<CoverCountReport> {
    lambda_lift_with_units(n, 1, 1)
}

/// Same count for arbitrary valid units on the two free cone points;
/// the outcome is unit-independent, which the tests exhaust for small
/// `n`. The closed forms `curves = 4n-1` and `pieces = 4n` are checked
/// against the orbit counts before returning.
pub fn lambda_lift_with_units(n: u32, u2: u64, u3: u64) -> Result<CoverCountReport> {
    let (spec, [a1, a2, a3, a4]) = lambda_spec(n, u2, u3)?;
    let d = spec.degree();

    let components_plus = a1.gcd(&a2).gcd(&d);
    let components_minus = a3.gcd(&a4).gcd(&d);
    let curve_sum = |x: u64, y: u64| ((u128::from(x) + u128::from(y)) % u128::from(d)) as u64;
    let curves = curve_sum(a1, a2).gcd(&d);
    let curves_minus = curve_sum(a3, a4).gcd(&d);
    if curves != curves_minus {
        return Err(Error::Internal(format!(
            "separating curve counts disagree between the two sides: {curves} vs {curves_minus}"
        )));
    }
    let pieces = components_plus + components_minus;
    let n64 = u64::from(n);
    if curves != 4 * n64 - 1 || pieces != 4 * n64 {
        return Err(Error::Internal(format!(
            "orbit counts (curves {curves}, pieces {pieces}) deviate from the closed forms \
             (4n-1, 4n) at n = {n}"
        )));
    }
    let genus = spec.closed_genus()?;
    Ok(CoverCountReport { degree: d, components_plus, components_minus, curves, pieces, genus })
}

/// Genus of the closed fiber surface of the `n`-th member, computed
/// from the Euler characteristic of the branched cover.
pub fn closed_fiber_genus(n: u32) -> Result<u64> {
    lambda_spec(n, 1, 1)?.0.closed_genus()
}

/// Fiber data of a torus knot read from its rotation description.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusFiberCounts {
    /// Seifert genus `(p-1)(q-1)/2`.
    pub genus: u64,
    /// Sides of the fiber's polygon model, `2pq`.
    pub sides: u64,
    /// Order of the rotation identifying the sides, `pq`.
    pub order: u64,
}

pub fn torus_knot_fiber(p: u64, q: u64) -> Result<TorusFiberCounts> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(Error::InvalidTorusKnotParameters);
    }
    let order = mul_fit(p, q, "rotation order")?;
    let sides = mul_fit(order, 2, "polygon side count")?;
    Ok(TorusFiberCounts { genus: (p - 1) * (q - 1) / 2, sides, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent orbit counter: explicit union-find over the points
    /// of Z/d for components, explicit cycle walk for circles.
    struct PointOrbits {
        parent: Vec<usize>,
    }

    impl PointOrbits {
        fn new(d: u64) -> Self {
            PointOrbits { parent: (0..d as usize).collect() }
        }

        fn find(&mut self, x: usize) -> usize {
            if self.parent[x] != x {
                let root = self.find(self.parent[x]);
                self.parent[x] = root;
            }
            self.parent[x]
        }

        fn union(&mut self, x: usize, y: usize) {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx != ry {
                self.parent[rx] = ry;
            }
        }

        fn count(&mut self) -> u64 {
            let n = self.parent.len();
            (0..n).filter(|&x| self.find(x) == x).count() as u64
        }
    }

    fn oracle_components(d: u64, shifts: &[u64]) -> u64 {
        let mut uf = PointOrbits::new(d);
        for x in 0..d {
            for &s in shifts {
                uf.union(x as usize, ((x + s) % d) as usize);
            }
        }
        uf.count()
    }

    fn oracle_cycles(d: u64, shift: u64) -> u64 {
        let mut seen = vec![false; d as usize];
        let mut cycles = 0;
        for start in 0..d as usize {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = ((x as u64 + shift) % d) as usize;
            }
        }
        cycles
    }

    #[test]
    fn frozen_disk_examples() {
        let c = disk_side_counts(42, 2, 7, 1, 1).unwrap();
        assert_eq!((c.components, c.boundary_circles), (3, 3));
        assert_eq!(c.per_component, 1);
        assert!(c.matches_claimed_gcd);

        let c = disk_side_counts(42, 6, 21, 1, 1).unwrap();
        assert_eq!((c.components, c.boundary_circles), (1, 3));
        assert_eq!(c.per_component, 3);
        assert!(c.matches_claimed_gcd);
    }

    #[test]
    fn unit_choice_can_break_the_per_component_count() {
        // same degree and orders as the consistent example above, but
        // the second unit is 2: one circle over one component
        let c = disk_side_counts(42, 6, 21, 1, 2).unwrap();
        assert_eq!((c.components, c.boundary_circles), (1, 1));
        assert_eq!(c.per_component, 1);
        assert_ne!(c.per_component, boundary_components(6, 21));
        assert!(!c.matches_claimed_gcd);

        // and for degree 4 with orders 2 and 4 no unit choice at all
        // gives gcd-many circles per component
        for ub in [1, 3] {
            let c = disk_side_counts(4, 2, 4, 1, ub).unwrap();
            assert!(!c.matches_claimed_gcd);
            assert_eq!(c.per_component, 1);
        }
    }

    #[test]
    fn disk_counts_match_orbit_oracle() {
        for a in 1..=12u64 {
            for b in 1..=12u64 {
                let l = a / a.gcd(&b) * b;
                for k in 1..=3u64 {
                    let d = l * k;
                    for ua in (1..=a).filter(|u| u.gcd(&a) == 1) {
                        for ub in (1..=b).filter(|u| u.gcd(&b) == 1) {
                            let c = disk_side_counts(d, a, b, ua, ub).unwrap();
                            let alpha = d / a * ua % d;
                            let beta = d / b * ub % d;
                            assert_eq!(
                                c.components,
                                oracle_components(d, &[alpha, beta]),
                                "components at d={d} a={a} b={b} ua={ua} ub={ub}"
                            );
                            assert_eq!(
                                c.boundary_circles,
                                oracle_cycles(d, (alpha + beta) % d),
                                "circles at d={d} a={a} b={b} ua={ua} ub={ub}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(
            CyclicCoverSpec::new(42, &[(4, 1)]),
            Err(Error::ConeOrderDoesNotDivide { order: 4, degree: 42 })
        ));
        assert!(matches!(
            CyclicCoverSpec::new(42, &[(6, 3)]),
            Err(Error::UnitNotCoprime { unit: 3, order: 6 })
        ));
        assert!(CyclicCoverSpec::new(0, &[]).is_err());

        let spec = CyclicCoverSpec::new(42, &[(2, 1), (7, 1), (6, 1), (21, 4)]).unwrap();
        assert_eq!(spec.images(), vec![21, 6, 7, 8]);
        assert!(spec.is_closed_consistent());
        assert!(spec.is_connected());

        let unbalanced = CyclicCoverSpec::new(42, &[(2, 1), (7, 1)]).unwrap();
        assert!(!unbalanced.is_closed_consistent());
        assert!(matches!(unbalanced.closed_genus(), Err(Error::UnbalancedClosedCover)));
    }

    #[test]
    fn lambda_counts_frozen() {
        let r = lambda_lift(1).unwrap();
        assert_eq!(r.degree, 42);
        assert_eq!((r.components_plus, r.components_minus), (3, 1));
        assert_eq!((r.curves, r.pieces), (3, 4));
        assert_eq!(r.genus, 25);

        let r = lambda_lift(2).unwrap();
        assert_eq!(r.degree, 210);
        assert_eq!((r.curves, r.pieces), (7, 8));
        assert_eq!(r.genus, 143);

        assert!(matches!(lambda_lift(0), Err(Error::FamilyIndex)));
    }

    #[test]
    fn lambda_counts_do_not_depend_on_units() {
        for n in 1..=2u32 {
            let baseline = lambda_lift(n).unwrap();
            let (p, q) = (8 * u64::from(n) - 1, 8 * u64::from(n) - 2);
            for u2 in (1..p).filter(|u| u.gcd(&p) == 1) {
                for u3 in (1..q).filter(|u| u.gcd(&q) == 1) {
                    assert_eq!(lambda_lift_with_units(n, u2, u3).unwrap(), baseline);
                }
            }
        }
    }

    #[test]
    fn genus_formula_values() {
        assert_eq!(closed_fiber_genus(1).unwrap(), 25);
        assert_eq!(closed_fiber_genus(2).unwrap(), 143);
        assert_eq!(closed_fiber_genus(3).unwrap(), 357);
        // matches 48n^2 - 26n + 3 generally
        for n in 1..=40u64 {
            assert_eq!(closed_fiber_genus(n as u32).unwrap(), 48 * n * n - 26 * n + 3);
        }
    }

    #[test]
    fn torus_fiber_counts() {
        let t = torus_knot_fiber(7, 6).unwrap();
        assert_eq!((t.genus, t.sides, t.order), (15, 84, 42));
        let t = torus_knot_fiber(21, 2).unwrap();
        assert_eq!((t.genus, t.sides, t.order), (10, 84, 42));
        let t = torus_knot_fiber(2, 3).unwrap();
        assert_eq!((t.genus, t.sides, t.order), (1, 12, 6));
        assert!(matches!(torus_knot_fiber(4, 6), Err(Error::InvalidTorusKnotParameters)));
        assert!(matches!(torus_knot_fiber(1, 5), Err(Error::InvalidTorusKnotParameters)));
    }
}
