//! Independent exact-arithmetic verification of the chain-derived facet
//! description: build the point cloud of a twinned chain polytope from
//! antichains, find facets by brute force in low dimension, validate an
//! H-representation against the cloud, and certify reflexivity.
//!
//! Everything here is integer or rational arithmetic; the module shares no
//! code path with the combinatorial facet enumeration it checks.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::chains::antichain_masks;
use crate::error::{Error, Result};
use crate::linalg;
use crate::poset::Poset;
use crate::twinned::FacetFamily;

/// Largest dimension for the exhaustive-hyperplane facet search and the
/// completeness check.
pub const MAX_BRUTE_DIM: usize = 4;

/// An integer point of `R^d`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

/// The inequality `normal . x <= rhs`, stored jointly primitive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl HalfSpace {
    pub fn new(normal: Vec<i64>, rhs: i64) -> HalfSpace {
        assert!(
            normal.iter().any(|&v| v != 0),
            "half-space normal must be nonzero"
        );
        let (normal, rhs) = linalg::primitive(normal, rhs);
        HalfSpace { normal, rhs }
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        dot(&self.normal, &p.0) <= self.rhs as i128
    }

    pub fn is_tight_at(&self, p: &LatticePoint) -> bool {
        dot(&self.normal, &p.0) == self.rhs as i128
    }
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// H-representation: a deduplicated, sorted list of half-spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HRep {
    pub d: usize,
    pub rows: Vec<HalfSpace>,
}

impl HRep {
    pub fn new(d: usize, mut rows: Vec<HalfSpace>) -> HRep {
        rows.sort();
        rows.dedup();
        HRep { d, rows }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// One row per half-space: `a_1 ... a_d | b`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for h in &self.rows {
            let coeffs: Vec<String> = h.normal.iter().map(|v| v.to_string()).collect();
            s.push_str(&coeffs.join(" "));
            s.push_str(" | ");
            s.push_str(&h.rhs.to_string());
            s.push('\n');
        }
        s
    }
}

/// V-representation: the vertex set, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VRep {
    pub d: usize,
    pub points: Vec<LatticePoint>,
}

impl VRep {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// One row per point: `x_1 ... x_d`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            let coords: Vec<String> = p.0.iter().map(|v| v.to_string()).collect();
            s.push_str(&coords.join(" "));
            s.push('\n');
        }
        s
    }
}

/// The generating points of the twinned chain polytope: antichain indicator
/// vectors of `P` together with the negated ones of `Q`, deduplicated (the
/// origin arises from both sides) and sorted.
pub fn point_cloud(p: &Poset, q: &Poset) -> Result<Vec<LatticePoint>> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch {
            left: p.len(),
            right: q.len(),
        });
    }
    let d = p.len();
    if d == 0 {
        return Err(Error::DegenerateInput("empty ground set".into()));
    }
    let mut cloud: BTreeSet<LatticePoint> = BTreeSet::new();
    for mask in antichain_masks(p) {
        let coords: Vec<i64> = (0..d).map(|i| (mask >> i & 1) as i64).collect();
        cloud.insert(LatticePoint(coords));
    }
    for mask in antichain_masks(q) {
        let coords: Vec<i64> = (0..d).map(|i| -((mask >> i & 1) as i64)).collect();
        cloud.insert(LatticePoint(coords));
    }
    Ok(cloud.into_iter().collect())
}

/// The extreme points of `conv(points)`, each decided by an exact rational
/// feasibility test against the hull of the remaining points.
pub fn vertices(points: &[LatticePoint]) -> Result<VRep> {
    let d = points.first().map_or(0, LatticePoint::dim);
    let refs: Vec<&[i64]> = points.iter().map(|p| p.0.as_slice()).collect();
    if linalg::affine_rank(&refs) != d {
        return Err(Error::DegenerateInput(format!(
            "points span affine rank {} < {d}",
            linalg::affine_rank(&refs)
        )));
    }
    let mut verts = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let others: Vec<&[i64]> = points
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.0.as_slice())
            .collect();
        if !linalg::point_in_hull(&p.0, &others) {
            verts.push(p.clone());
        }
    }
    verts.sort();
    Ok(VRep { d, points: verts })
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Every facet-supporting hyperplane spanned by `d` affinely independent
/// cloud points, oriented so that all points lie on the `<=` side.
/// Exhaustive, exact, and deliberately independent of the chain formula.
pub fn brute_force_facets(points: &[LatticePoint]) -> Result<HRep> {
    let d = points.first().map_or(0, LatticePoint::dim);
    if d > MAX_BRUTE_DIM {
        return Err(Error::Size {
            what: "brute-force facet search",
            d,
            min: 1,
            max: MAX_BRUTE_DIM,
        });
    }
    let refs: Vec<&[i64]> = points.iter().map(|p| p.0.as_slice()).collect();
    if d == 0 || linalg::affine_rank(&refs) != d {
        return Err(Error::DegenerateInput(
            "points do not span the ambient dimension".into(),
        ));
    }
    let mut rows: BTreeSet<HalfSpace> = BTreeSet::new();
    for_each_combination(points.len(), d, &mut |idx| {
        let chosen: Vec<&[i64]> = idx.iter().map(|&i| refs[i]).collect();
        let Some(normal) = linalg::hyperplane_normal(&chosen) else {
            return;
        };
        let b = dot(&normal, chosen[0]);
        let mut above = false;
        let mut below = false;
        for r in &refs {
            match dot(&normal, r).cmp(&b) {
                std::cmp::Ordering::Greater => above = true,
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => {}
            }
            if above && below {
                return;
            }
        }
        let (normal, b) = if above {
            (normal.into_iter().map(|v| -v).collect(), -b)
        } else {
            (normal, b)
        };
        rows.insert(HalfSpace::new(normal, b as i64));
    });
    Ok(HRep::new(d, rows.into_iter().collect()))
}

/// Translate facet labels into inequalities: `+1` on the `P`-side indices,
/// `-1` on the `Q`-side indices, right-hand side 1.
pub fn hrep_from_chains(family: &FacetFamily) -> HRep {
    let d = family.ground_size();
    let mut rows = Vec::with_capacity(family.len());
    for chain in family.chains() {
        if chain.p.is_empty() && chain.q.is_empty() {
            continue; // only the degenerate d = 0 family
        }
        let mut normal = vec![0i64; d];
        for &i in &chain.p {
            normal[i - 1] = 1;
        }
        for &j in &chain.q {
            normal[j - 1] = -1;
        }
        rows.push(HalfSpace::new(normal, 1));
    }
    HRep::new(d, rows)
}

/// Outcome of a single validation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn ok(detail: impl Into<String>) -> Check {
        Check {
            pass: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> Check {
        Check {
            pass: false,
            detail: detail.into(),
        }
    }
}

/// Which of the three independent checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationRequest {
    pub validity: bool,
    pub facet_support: bool,
    pub completeness: bool,
}

impl ValidationRequest {
    pub fn validity_only() -> Self {
        ValidationRequest {
            validity: true,
            facet_support: false,
            completeness: false,
        }
    }

    pub fn facets() -> Self {
        ValidationRequest {
            validity: true,
            facet_support: true,
            completeness: false,
        }
    }

    pub fn complete() -> Self {
        ValidationRequest {
            validity: true,
            facet_support: true,
            completeness: true,
        }
    }
}

/// Results of the requested checks (unrequested ones are `None`).
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub validity: Option<Check>,
    pub facet_support: Option<Check>,
    pub completeness: Option<Check>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        [&self.validity, &self.facet_support, &self.completeness]
            .into_iter()
            .flatten()
            .all(|c| c.pass)
    }
}

/// Check an H-representation against a point cloud:
/// (a) validity — every point satisfies every inequality;
/// (b) facet support — each inequality is tight on a set of affine rank d-1;
/// (c) completeness (d <= 4) — the vertex set carved out by the inequalities
///     equals the extreme points of the cloud.
pub fn validate_hrep(
    points: &[LatticePoint],
    hrep: &HRep,
    request: ValidationRequest,
) -> Result<ValidationReport> {
    let d = hrep.d;
    let mut report = ValidationReport {
        validity: None,
        facet_support: None,
        completeness: None,
    };
    if request.validity {
        let mut check = Check::ok(format!(
            "{} points inside all {} rows",
            points.len(),
            hrep.len()
        ));
        'outer: for h in &hrep.rows {
            for p in points {
                if !h.contains(p) {
                    check = Check::fail(format!(
                        "point {:?} violates {:?} . x <= {}",
                        p.0, h.normal, h.rhs
                    ));
                    break 'outer;
                }
            }
        }
        report.validity = Some(check);
    }
    if request.facet_support {
        let mut check = Check::ok(format!("all {} rows facet-supporting", hrep.len()));
        for h in &hrep.rows {
            let tight: Vec<&[i64]> = points
                .iter()
                .filter(|p| h.is_tight_at(p))
                .map(|p| p.0.as_slice())
                .collect();
            // the tight set must span a (d-1)-dimensional affine flat
            let supported = !tight.is_empty() && linalg::affine_rank(&tight) == d - 1;
            if !supported {
                check = Check::fail(format!(
                    "row {:?} | {} tight on {} points spanning affine dimension {}",
                    h.normal,
                    h.rhs,
                    tight.len(),
                    if tight.is_empty() {
                        -1
                    } else {
                        linalg::affine_rank(&tight) as i64
                    },
                ));
                break;
            }
        }
        report.facet_support = Some(check);
    }
    if request.completeness {
        if d > MAX_BRUTE_DIM {
            return Err(Error::Size {
                what: "H-representation completeness check",
                d,
                min: 1,
                max: MAX_BRUTE_DIM,
            });
        }
        report.completeness = Some(completeness_check(points, hrep)?);
    }
    Ok(report)
}

/// Normalized rational point: numerators over a positive denominator, reduced.
type RationalPoint = (Vec<i128>, i128);

fn completeness_check(points: &[LatticePoint], hrep: &HRep) -> Result<Check> {
    let d = hrep.d;
    let mut carved: BTreeSet<RationalPoint> = BTreeSet::new();
    for_each_combination(hrep.rows.len(), d, &mut |idx| {
        let a: Vec<Vec<i128>> = idx
            .iter()
            .map(|&i| hrep.rows[i].normal.iter().map(|&v| v as i128).collect())
            .collect();
        let b: Vec<i128> = idx.iter().map(|&i| hrep.rows[i].rhs as i128).collect();
        let Some((nums, den)) = linalg::solve_square(&a, &b) else {
            return;
        };
        // feasibility for every row: normal . (nums/den) <= rhs
        let feasible = hrep.rows.iter().all(|h| {
            let lhs: i128 = h
                .normal
                .iter()
                .zip(&nums)
                .map(|(&c, &n)| c as i128 * n)
                .sum();
            lhs <= h.rhs as i128 * den
        });
        if feasible {
            carved.insert(reduce_rational(nums, den));
        }
    });
    let expected: BTreeSet<RationalPoint> = vertices(points)?
        .points
        .into_iter()
        .map(|p| (p.0.into_iter().map(|v| v as i128).collect(), 1i128))
        .collect();
    if carved == expected {
        Ok(Check::ok(format!(
            "H-polytope has exactly the {} cloud vertices",
            expected.len()
        )))
    } else {
        let extra: Vec<_> = carved.difference(&expected).take(3).cloned().collect();
        let missing: Vec<_> = expected.difference(&carved).take(3).cloned().collect();
        Ok(Check::fail(format!(
            "vertex sets differ: {} carved vs {} expected (extra: {:?}, missing: {:?})",
            carved.len(),
            expected.len(),
            extra,
            missing
        )))
    }
}

fn reduce_rational(mut nums: Vec<i128>, mut den: i128) -> RationalPoint {
    debug_assert!(den > 0);
    let mut g = den;
    for &n in &nums {
        g = g.gcd(&n);
    }
    if g > 1 {
        for n in nums.iter_mut() {
            *n /= g;
        }
        den /= g;
    }
    (nums, den)
}

/// A validated reflexivity test: every (jointly primitive) facet inequality
/// must have right-hand side exactly 1, which also places the origin strictly
/// inside. Requires a report whose validity and facet-support checks passed.
pub fn is_reflexive(hrep: &HRep, report: &ValidationReport) -> Result<bool> {
    let validated = matches!(&report.validity, Some(c) if c.pass)
        && matches!(&report.facet_support, Some(c) if c.pass);
    if !validated {
        return Err(Error::UnvalidatedInput(
            "reflexivity requires passing validity and facet-support checks".into(),
        ));
    }
    Ok(hrep.rows.iter().all(|h| h.rhs == 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::twinned::facet_chains;

    fn pt(coords: &[i64]) -> LatticePoint {
        LatticePoint(coords.to_vec())
    }

    #[test]
    fn cloud_of_antichain_pair_is_hexagon_point_set() {
        let i2 = Poset::antichain(2);
        let cloud = point_cloud(&i2, &i2).unwrap();
        let expected: Vec<LatticePoint> =
            [[-1, -1], [-1, 0], [0, -1], [0, 0], [0, 1], [1, 0], [1, 1]]
                .iter()
                .map(|c| pt(c))
                .collect();
        assert_eq!(cloud, expected);
    }

    #[test]
    fn cloud_sizes() {
        let c2 = Poset::chain(2);
        assert_eq!(point_cloud(&c2, &c2).unwrap().len(), 5);
        let i3 = Poset::antichain(3);
        assert_eq!(point_cloud(&i3, &i3).unwrap().len(), 15);
    }

    #[test]
    fn cloud_coords_are_small() {
        let p = Poset::from_covers(4, &[(1, 3), (2, 4)]).unwrap();
        let cloud = point_cloud(&p, &p).unwrap();
        assert!(cloud
            .iter()
            .all(|p| p.0.iter().all(|&c| (-1..=1).contains(&c))));
    }

    #[test]
    fn cloud_rejects_empty_and_mismatched() {
        let e = Poset::empty();
        assert!(matches!(
            point_cloud(&e, &e),
            Err(Error::DegenerateInput(_))
        ));
        assert!(matches!(
            point_cloud(&Poset::antichain(1), &Poset::antichain(2)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn vertex_counts_for_small_polytopes() {
        let i3 = Poset::antichain(3);
        let v = vertices(&point_cloud(&i3, &i3).unwrap()).unwrap();
        assert_eq!(v.len(), 14);

        let c2 = Poset::chain(2);
        assert_eq!(vertices(&point_cloud(&c2, &c2).unwrap()).unwrap().len(), 4);

        let i2 = Poset::antichain(2);
        assert_eq!(vertices(&point_cloud(&i2, &c2).unwrap()).unwrap().len(), 5);
        assert_eq!(vertices(&point_cloud(&i2, &i2).unwrap()).unwrap().len(), 6);
    }

    #[test]
    fn vertices_rejects_deficient_span() {
        let line = [pt(&[0, 0]), pt(&[1, 0]), pt(&[2, 0])];
        assert!(matches!(vertices(&line), Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn brute_force_counts() {
        let i2 = Poset::antichain(2);
        let c3 = Poset::chain(3);
        assert_eq!(
            brute_force_facets(&point_cloud(&i2, &i2).unwrap())
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            brute_force_facets(&point_cloud(&c3, &c3).unwrap())
                .unwrap()
                .len(),
            8
        );
        let p = Poset::from_covers(3, &[(3, 1), (3, 2)]).unwrap();
        let q = Poset::from_covers(3, &[(2, 1), (2, 3)]).unwrap();
        assert_eq!(
            brute_force_facets(&point_cloud(&p, &q).unwrap())
                .unwrap()
                .len(),
            11
        );
    }

    #[test]
    fn brute_force_size_guard() {
        let i5 = Poset::antichain(5);
        let cloud = point_cloud(&i5, &i5).unwrap();
        assert!(matches!(
            brute_force_facets(&cloud),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn chain_rows_have_unit_coefficients() {
        let i2 = Poset::antichain(2);
        let fam = facet_chains(&i2, &i2).unwrap();
        let h = hrep_from_chains(&fam);
        assert!(h.rows.contains(&HalfSpace::new(vec![1, 0], 1))); // x1 <= 1
        assert!(h.rows.contains(&HalfSpace::new(vec![-1, 0], 1))); // -x1 <= 1
        assert!(h.rows.contains(&HalfSpace::new(vec![1, -1], 1))); // x1 - x2 <= 1
        assert_eq!(h.len(), 6);
    }

    #[test]
    fn mixed_chain_row_tight_set_on_the_hexagon() {
        // the row x1 - x2 <= 1 supports the hexagon edge through (0,-1)
        // and (1,0)
        let h = HalfSpace::new(vec![1, -1], 1);
        let i2 = Poset::antichain(2);
        let cloud = point_cloud(&i2, &i2).unwrap();
        let tight: Vec<&LatticePoint> = cloud.iter().filter(|p| h.is_tight_at(p)).collect();
        assert_eq!(tight, vec![&pt(&[0, -1]), &pt(&[1, 0])]);
    }

    #[test]
    fn chain_hrep_matches_brute_force_exactly() {
        let i2 = Poset::antichain(2);
        let cloud = point_cloud(&i2, &i2).unwrap();
        let brute = brute_force_facets(&cloud).unwrap();
        let chain = hrep_from_chains(&facet_chains(&i2, &i2).unwrap());
        assert_eq!(brute, chain);
    }

    #[test]
    fn validation_full_pipeline() {
        let i2 = Poset::antichain(2);
        let cloud = point_cloud(&i2, &i2).unwrap();
        let h = hrep_from_chains(&facet_chains(&i2, &i2).unwrap());
        let report = validate_hrep(&cloud, &h, ValidationRequest::complete()).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(h.len(), 6);
        assert!(is_reflexive(&h, &report).unwrap());
    }

    #[test]
    fn slack_row_fails_facet_support() {
        let i2 = Poset::antichain(2);
        let cloud = point_cloud(&i2, &i2).unwrap();
        let mut rows = hrep_from_chains(&facet_chains(&i2, &i2).unwrap()).rows;
        rows.push(HalfSpace::new(vec![1, 0], 2)); // x1 <= 2 is never tight
        let h = HRep::new(2, rows);
        let report = validate_hrep(&cloud, &h, ValidationRequest::facets()).unwrap();
        assert!(report.validity.as_ref().unwrap().pass);
        assert!(!report.facet_support.as_ref().unwrap().pass);
    }

    #[test]
    fn worked_example_pipeline_has_twelve_facets() {
        let p = Poset::from_covers(3, &[(3, 1), (3, 2)]).unwrap();
        let cloud = point_cloud(&p, &p).unwrap();
        let h = hrep_from_chains(&facet_chains(&p, &p).unwrap());
        let report = validate_hrep(&cloud, &h, ValidationRequest::complete()).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert_eq!(h.len(), 12);
    }

    #[test]
    fn reflexivity_counterexamples() {
        // unit square: origin on the boundary
        let square = [pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1]), pt(&[1, 1])];
        let h = HRep::new(
            2,
            vec![
                HalfSpace::new(vec![1, 0], 1),
                HalfSpace::new(vec![0, 1], 1),
                HalfSpace::new(vec![-1, 0], 0),
                HalfSpace::new(vec![0, -1], 0),
            ],
        );
        let report = validate_hrep(&square, &h, ValidationRequest::complete()).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert!(!is_reflexive(&h, &report).unwrap());

        // doubled hexagon: rhs stays 2 after primitive normalization
        let i2 = Poset::antichain(2);
        let cloud: Vec<LatticePoint> = point_cloud(&i2, &i2)
            .unwrap()
            .into_iter()
            .map(|p| LatticePoint(p.0.into_iter().map(|c| 2 * c).collect()))
            .collect();
        let rows: Vec<HalfSpace> = hrep_from_chains(&facet_chains(&i2, &i2).unwrap())
            .rows
            .into_iter()
            .map(|h| HalfSpace::new(h.normal, 2))
            .collect();
        let h2 = HRep::new(2, rows);
        let report = validate_hrep(&cloud, &h2, ValidationRequest::complete()).unwrap();
        assert!(report.all_passed(), "{report:?}");
        assert!(!is_reflexive(&h2, &report).unwrap());
    }

    #[test]
    fn reflexivity_requires_validation() {
        let h = HRep::new(1, vec![HalfSpace::new(vec![1], 1)]);
        let empty_report = ValidationReport {
            validity: None,
            facet_support: None,
            completeness: None,
        };
        assert!(matches!(
            is_reflexive(&h, &empty_report),
            Err(Error::UnvalidatedInput(_))
        ));
    }

    #[test]
    fn completeness_size_guard() {
        let i5 = Poset::antichain(5);
        let cloud = point_cloud(&i5, &i5).unwrap();
        let h = hrep_from_chains(&facet_chains(&i5, &i5).unwrap());
        assert!(matches!(
            validate_hrep(&cloud, &h, ValidationRequest::complete()),
            Err(Error::Size { .. })
        ));
        // but validity and facet support still run at d = 5
        let report = validate_hrep(&cloud, &h, ValidationRequest::facets()).unwrap();
        assert!(report.all_passed(), "{report:?}");
    }

    #[test]
    fn one_dimensional_polytope() {
        let one = Poset::singleton();
        let cloud = point_cloud(&one, &one).unwrap();
        assert_eq!(cloud, vec![pt(&[-1]), pt(&[0]), pt(&[1])]);
        let h = brute_force_facets(&cloud).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(vertices(&cloud).unwrap().len(), 2);
    }
}
