//! Exact rational arithmetic and the predicates built on it.
//!
//! Every validity decision in the crate goes through this module. Floating
//! point only appears in [`angle_degrees`], which is used for reporting.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("malformed rational {0:?}")]
    MalformedRational(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("segment endpoints coincide")]
    DegenerateSegment,
}

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_integer(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rational(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    /// Exact conversion of a finite double; `None` for NaN and infinities.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Rational)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn signum(&self) -> i8 {
        if self.0.is_zero() {
            0
        } else if self.0.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let bad = || GeometryError::MalformedRational(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let numer: BigInt = n.parse().map_err(|_| bad())?;
        let denom: BigInt = d.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(GeometryError::ZeroDenominator(s.to_string()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl<'a> $trait<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational($trait::$method(&self.0, &rhs.0))
            }
        }
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational($trait::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> Neg for &'a Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

/// Serialized as a two-element array of rational strings.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[Rational; 2]", into = "[Rational; 2]")]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl From<[Rational; 2]> for Point {
    fn from([x, y]: [Rational; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [Rational; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Segment {
    a: Point,
    b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Result<Self, GeometryError> {
        if a == b {
            return Err(GeometryError::DegenerateSegment);
        }
        Ok(Segment { a, b })
    }

    pub fn a(&self) -> &Point {
        &self.a
    }

    pub fn b(&self) -> &Point {
        &self.b
    }

    pub fn direction(&self) -> (Rational, Rational) {
        (&self.b.x - &self.a.x, &self.b.y - &self.a.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn sign(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    fn from_sign(s: i8) -> Self {
        match s.cmp(&0) {
            Ordering::Less => Orientation::Clockwise,
            Ordering::Equal => Orientation::Collinear,
            Ordering::Greater => Orientation::CounterClockwise,
        }
    }
}

/// Sign of `(q - p) x (r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    let d = cross(&(&q.x - &p.x), &(&q.y - &p.y), &(&r.x - &p.x), &(&r.y - &p.y));
    Orientation::from_sign(d.signum())
}

pub(crate) fn cross(ax: &Rational, ay: &Rational, bx: &Rational, by: &Rational) -> Rational {
    &(ax * by) - &(ay * bx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    /// Interiors meet in exactly one point.
    ProperCrossing(Point),
    /// The segments share a single point that is an endpoint of at least one.
    EndpointTouch(Point),
    /// The segments are collinear and share more than one point.
    CollinearOverlap,
    Disjoint,
}

/// Relation between two segments, without the intersection point.
///
/// Generic so the checker can run the same decision procedure on machine
/// integers when the coordinates allow it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SegmentRelation {
    Proper,
    Touch,
    Overlap,
    Disjoint,
}

/// Exact ring operations needed by [`segment_relation`].
pub trait ExactScalar: Clone + Ord {
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn sign(&self) -> i8;
}

impl ExactScalar for i128 {
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sign(&self) -> i8 {
        self.signum() as i8
    }
}

impl ExactScalar for BigInt {
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sign(&self) -> i8 {
        match self.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }
}

impl ExactScalar for Rational {
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sign(&self) -> i8 {
        self.signum()
    }
}

fn orient_generic<T: ExactScalar>(p: &[T; 2], q: &[T; 2], r: &[T; 2]) -> i8 {
    let l = q[0].sub(&p[0]).mul(&r[1].sub(&p[1]));
    let rr = q[1].sub(&p[1]).mul(&r[0].sub(&p[0]));
    l.sub(&rr).sign()
}

fn within<T: ExactScalar>(v: &T, a: &T, b: &T) -> bool {
    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
    lo <= v && v <= hi
}

fn on_closed_segment<T: ExactScalar>(p: &[T; 2], a: &[T; 2], b: &[T; 2]) -> bool {
    within(&p[0], &a[0], &b[0]) && within(&p[1], &a[1], &b[1])
}

/// Classifies segments `a1-a2` and `b1-b2`. Both segments must be
/// non-degenerate.
pub fn segment_relation<T: ExactScalar>(
    a1: &[T; 2],
    a2: &[T; 2],
    b1: &[T; 2],
    b2: &[T; 2],
) -> SegmentRelation {
    let o1 = orient_generic(a1, a2, b1);
    let o2 = orient_generic(a1, a2, b2);
    let o3 = orient_generic(b1, b2, a1);
    let o4 = orient_generic(b1, b2, a2);

    if o1 == 0 && o2 == 0 {
        // Collinear: project on the dominant axis.
        let axis = if a1[0] != a2[0] { 0 } else { 1 };
        let (alo, ahi) = minmax(&a1[axis], &a2[axis]);
        let (blo, bhi) = minmax(&b1[axis], &b2[axis]);
        let lo = if alo > blo { alo } else { blo };
        let hi = if ahi < bhi { ahi } else { bhi };
        return match lo.cmp(hi) {
            Ordering::Less => SegmentRelation::Overlap,
            Ordering::Equal => SegmentRelation::Touch,
            Ordering::Greater => SegmentRelation::Disjoint,
        };
    }

    if o1 * o2 < 0 && o3 * o4 < 0 {
        return SegmentRelation::Proper;
    }

    let touches = (o1 == 0 && on_closed_segment(b1, a1, a2))
        || (o2 == 0 && on_closed_segment(b2, a1, a2))
        || (o3 == 0 && on_closed_segment(a1, b1, b2))
        || (o4 == 0 && on_closed_segment(a2, b1, b2));
    if touches {
        SegmentRelation::Touch
    } else {
        SegmentRelation::Disjoint
    }
}

fn minmax<'a, T: Ord>(a: &'a T, b: &'a T) -> (&'a T, &'a T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn coords(p: &Point) -> [Rational; 2] {
    [p.x.clone(), p.y.clone()]
}

/// Intersection point of the supporting lines of two non-parallel segments.
pub(crate) fn line_intersection(s1: &Segment, s2: &Segment) -> Point {
    let (rx, ry) = s1.direction();
    let (sx, sy) = s2.direction();
    let denom = cross(&rx, &ry, &sx, &sy);
    let qpx = &s2.a.x - &s1.a.x;
    let qpy = &s2.a.y - &s1.a.y;
    let t = &cross(&qpx, &qpy, &sx, &sy) / &denom;
    Point::new(&s1.a.x + &(&t * &rx), &s1.a.y + &(&t * &ry))
}

pub fn intersect(s1: &Segment, s2: &Segment) -> Intersection {
    let rel = segment_relation(&coords(&s1.a), &coords(&s1.b), &coords(&s2.a), &coords(&s2.b));
    match rel {
        SegmentRelation::Proper => Intersection::ProperCrossing(line_intersection(s1, s2)),
        SegmentRelation::Overlap => Intersection::CollinearOverlap,
        SegmentRelation::Disjoint => Intersection::Disjoint,
        SegmentRelation::Touch => {
            let p = [&s1.a, &s1.b]
                .into_iter()
                .find(|p| on_segment(p, s2))
                .or_else(|| [&s2.a, &s2.b].into_iter().find(|p| on_segment(p, s1)))
                .cloned()
                .expect("touching segments share an endpoint");
            Intersection::EndpointTouch(p)
        }
    }
}

/// True iff `p` lies on the closed segment `s`.
pub fn on_segment(p: &Point, s: &Segment) -> bool {
    orientation(&s.a, &s.b, p) == Orientation::Collinear
        && on_closed_segment(&coords(p), &coords(&s.a), &coords(&s.b))
}

pub fn is_perpendicular(s1: &Segment, s2: &Segment) -> bool {
    let (ax, ay) = s1.direction();
    let (bx, by) = s2.direction();
    (&(&ax * &bx) + &(&ay * &by)).is_zero()
}

/// Acute (or right) angle between the supporting lines, in degrees.
pub fn angle_degrees(s1: &Segment, s2: &Segment) -> f64 {
    let (ax, ay) = s1.direction();
    let (bx, by) = s2.direction();
    let dot = (&(&ax * &bx) + &(&ay * &by)).to_f64();
    let crs = cross(&ax, &ay, &bx, &by).to_f64();
    line_angle_degrees(crs, dot)
}

pub(crate) fn line_angle_degrees(cross: f64, dot: f64) -> f64 {
    cross.abs().atan2(dot.abs()).to_degrees()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(p(a.0, a.1), p(b.0, b.1)).unwrap()
    }

    #[test]
    fn orientation_examples() {
        assert_eq!(orientation(&p(0, 0), &p(1, 0), &p(0, 1)).sign(), 1);
        assert_eq!(orientation(&p(0, 0), &p(1, 1), &p(2, 2)).sign(), 0);
        assert_eq!(orientation(&p(0, 0), &p(0, 1), &p(1, 0)).sign(), -1);
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(
            intersect(&seg((0, 0), (2, 0)), &seg((1, -1), (1, 1))),
            Intersection::ProperCrossing(p(1, 0))
        );
        assert_eq!(
            intersect(&seg((0, 0), (1, 0)), &seg((1, 0), (2, 1))),
            Intersection::EndpointTouch(p(1, 0))
        );
        assert_eq!(
            intersect(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            Intersection::CollinearOverlap
        );
        assert_eq!(intersect(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))), Intersection::Disjoint);
    }

    #[test]
    fn collinear_touch_and_gap() {
        assert_eq!(
            intersect(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))),
            Intersection::EndpointTouch(p(1, 0))
        );
        assert_eq!(intersect(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))), Intersection::Disjoint);
        // vertical collinear case uses the y axis
        assert_eq!(
            intersect(&seg((0, 0), (0, 2)), &seg((0, 1), (0, 3))),
            Intersection::CollinearOverlap
        );
    }

    #[test]
    fn t_junction_is_touch() {
        assert_eq!(
            intersect(&seg((0, 0), (2, 0)), &seg((1, 0), (1, 5))),
            Intersection::EndpointTouch(p(1, 0))
        );
    }

    #[test]
    fn rational_crossing_point() {
        let s1 = Segment::new(p(0, 0), p(1, 1)).unwrap();
        let s2 = Segment::new(p(0, 1), p(3, 0)).unwrap();
        let q = Rational::new(3, 4);
        assert_eq!(intersect(&s1, &s2), Intersection::ProperCrossing(Point::new(q.clone(), q)));
    }

    #[test]
    fn perpendicular_examples() {
        assert!(is_perpendicular(&seg((0, 0), (1, 0)), &seg((0, 0), (0, 1))));
        assert!(is_perpendicular(&seg((0, 0), (1, 1)), &seg((0, 1), (1, 0))));
        assert!(!is_perpendicular(&seg((0, 0), (1, 1)), &seg((0, 0), (2, 1))));
    }

    #[test]
    fn angle_examples() {
        assert!((angle_degrees(&seg((0, 0), (1, 0)), &seg((0, 0), (0, 1))) - 90.0).abs() < 1e-12);
        assert!((angle_degrees(&seg((0, 0), (1, 0)), &seg((0, 0), (1, 1))) - 45.0).abs() < 1e-12);
        // tan(a - b) = (1 - 1/2) / (1 + 1/2) = 1/3
        let expected = (1.0f64 / 3.0).atan().to_degrees();
        let got = angle_degrees(&seg((0, 0), (1, 1)), &seg((0, 0), (2, 1)));
        assert!((got - expected).abs() < 1e-12);
        assert!((expected - 18.434_948_822_922_01).abs() < 1e-9);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!("6/4".parse::<Rational>().unwrap(), Rational::new(3, 2));
        assert_eq!("-3".parse::<Rational>().unwrap(), Rational::from_integer(-3));
        assert_eq!("2/-4".parse::<Rational>().unwrap().to_string(), "-1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
        assert_eq!(Rational::new(1, 3).to_string(), "1/3");
        assert_eq!(Rational::new(4, 2).to_string(), "2");
    }

    #[test]
    fn degenerate_segment_rejected() {
        assert_eq!(Segment::new(p(1, 1), p(1, 1)), Err(GeometryError::DegenerateSegment));
    }
}
