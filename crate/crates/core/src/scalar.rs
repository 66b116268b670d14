//! Scalar traits shared by the whole crate.
//!
//! Lattice coordinates are integers of some [`Int`] type and every rational
//! quantity is a [`Ratio`] over that type. The default instantiation (see the
//! aliases at the crate root) is arbitrary precision; `i64`/`i128` are
//! available for quick experiments where overflow is not a concern.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

/// Integer type used for lattice coordinates.
pub trait Int:
    Integer
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn of(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every lattice integer type")
    }
}

impl Int for i64 {}
impl Int for i128 {}
impl Int for BigInt {}

/// Exact ordered field used by elimination and the simplex method.
pub trait Field: Clone + PartialOrd + Num + Signed + Debug + Display {}

impl<Z: Int> Field for Ratio<Z> {}

pub fn rat<Z: Int>(z: Z) -> Ratio<Z> {
    Ratio::from_integer(z)
}

pub fn rat_i64<Z: Int>(n: i64, d: i64) -> Ratio<Z> {
    Ratio::new(Z::of(n), Z::of(d))
}

/// Renders a rational the way every report does: `p` or `p/q`.
pub fn rat_to_string<Z: Int>(r: &Ratio<Z>) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Ratio<BigInt>> {
    let s = s.trim();
    let parse_int = |t: &str| t.trim().parse::<BigInt>().ok();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = parse_int(n)?;
            let d = parse_int(d)?;
            if d == BigInt::from(0) {
                None
            } else {
                Some(Ratio::new(n, d))
            }
        }
        None => parse_int(s).map(Ratio::from_integer),
    }
}

pub fn to_bigint<Z: Int>(z: &Z) -> BigInt {
    BigInt::parse_bytes(z.to_string().as_bytes(), 10).expect("integers render in base 10")
}

pub fn from_bigint<Z: Int>(z: &BigInt) -> Option<Z> {
    Z::from_str_radix(&z.to_string(), 10).ok()
}
