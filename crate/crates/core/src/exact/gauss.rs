use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer, Visitor};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::Error;

/// Exact element `re + i·im` of the Gaussian rationals.
///
/// Values whose common-denominator form `(a + b i)/d` fits in `i128` are kept
/// inline; anything larger falls back to big rationals. The form is
/// canonical, so derived equality and hashing are structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// `(re + i·im)/den` with `den > 0` and `gcd(re, im, den) = 1`.
    Small { re: i128, im: i128, den: i128 },
    Big { re: BigRational, im: BigRational },
}

impl Default for GaussRat {
    fn default() -> Self {
        GaussRat(Repr::Small { re: 0, im: 0, den: 1 })
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    // one Euclid step first: the denominator is usually much smaller
    if a < b {
        std::mem::swap(&mut a, &mut b);
    }
    if b == 0 {
        return a;
    }
    a %= b;
    if let (Ok(x), Ok(y)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd_u64(x, y) as u128;
    }
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl GaussRat {
    /// Normalize `(re + i·im)/den` computed in `i128`.
    fn from_i128(re: i128, im: i128, den: i128) -> Self {
        debug_assert!(den != 0);
        if re == i128::MIN || im == i128::MIN || den == i128::MIN {
            return Self::from_big(
                BigRational::new(BigInt::from(re), BigInt::from(den)),
                BigRational::new(BigInt::from(im), BigInt::from(den)),
            );
        }
        let (mut re, mut im, mut den) = if den < 0 { (-re, -im, -den) } else { (re, im, den) };
        let mut g = if den == 1 { 1 } else { gcd_u128(den.unsigned_abs(), re.unsigned_abs()) };
        if g > 1 {
            g = gcd_u128(g, im.unsigned_abs());
        }
        if g > 1 {
            let g = g as i128;
            re /= g;
            im /= g;
            den /= g;
        }
        GaussRat(Repr::Small { re, im, den })
    }

    fn from_big(re: BigRational, im: BigRational) -> Self {
        let den = num_integer::Integer::lcm(re.denom(), im.denom());
        let a = re.numer() * (&den / re.denom());
        let b = im.numer() * (&den / im.denom());
        if let (Some(a), Some(b), Some(d)) = (a.to_i128(), b.to_i128(), den.to_i128()) {
            return Self::from_i128(a, b, d);
        }
        GaussRat(Repr::Big { re, im })
    }

    fn parts(&self) -> (BigRational, BigRational) {
        match &self.0 {
            Repr::Small { re, im, den } => (
                BigRational::new(BigInt::from(*re), BigInt::from(*den)),
                BigRational::new(BigInt::from(*im), BigInt::from(*den)),
            ),
            Repr::Big { re, im } => (re.clone(), im.clone()),
        }
    }

    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self::from_big(re, im)
    }

    pub fn real(re: BigRational) -> Self {
        Self::from_big(re, BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        GaussRat(Repr::Small { re: n as i128, im: 0, den: 1 })
    }

    /// `p/q` as a real Gaussian rational. Panics when `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        Self::from_i128(p as i128, 0, q as i128)
    }

    pub fn complex(re: (i64, i64), im: (i64, i64)) -> Self {
        assert!(re.1 != 0 && im.1 != 0, "zero denominator");
        let (p1, q1, p2, q2) = (re.0 as i128, re.1 as i128, im.0 as i128, im.1 as i128);
        Self::from_i128(p1 * q2, p2 * q1, q1 * q2)
    }

    pub fn i() -> Self {
        GaussRat(Repr::Small { re: 0, im: 1, den: 1 })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Least common denominator of the real and imaginary parts.
    pub fn denominator(&self) -> BigInt {
        match &self.0 {
            Repr::Small { den, .. } => BigInt::from(*den),
            Repr::Big { re, im } => num_integer::Integer::lcm(re.denom(), im.denom()),
        }
    }

    pub fn re(&self) -> BigRational {
        self.parts().0
    }

    pub fn im(&self) -> BigRational {
        self.parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { re: 0, im: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small { re: 1, im: 0, den: 1 })
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small { im, .. } => *im == 0,
            Repr::Big { im, .. } => im.is_zero(),
        }
    }

    pub fn conj(&self) -> Self {
        match &self.0 {
            Repr::Small { re, im, den } => Self::from_i128(*re, -*im, *den),
            Repr::Big { re, im } => GaussRat(Repr::Big { re: re.clone(), im: -im.clone() }),
        }
    }

    /// `|x|²`, always a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        let (re, im) = self.parts();
        &re * &re + &im * &im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(&Self::one() / self)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents. `None` for `0^{-k}`.
    pub fn powi(&self, e: i32) -> Option<Self> {
        if e >= 0 {
            Some(self.pow(e as u32))
        } else {
            self.inv().map(|x| x.pow(e.unsigned_abs()))
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match &self.0 {
            Repr::Small { re, im, den } => {
                let d = *den as f64;
                if d.is_finite() && d < 1e300 {
                    Complex64::new(*re as f64 / d, *im as f64 / d)
                } else {
                    let (r, i) = self.parts();
                    Complex64::new(rat_to_f64(&r), rat_to_f64(&i))
                }
            }
            Repr::Big { re, im } => Complex64::new(rat_to_f64(re), rat_to_f64(im)),
        }
    }

    /// Exact square root in `Q(i)`, if one exists. The returned root has
    /// non-negative real part (and non-negative imaginary part when purely imaginary).
    pub fn sqrt(&self) -> Option<Self> {
        let (sre, sim) = self.parts();
        if sim.is_zero() {
            if sre.is_negative() {
                return rat_sqrt(&-sre).map(|r| Self::new(BigRational::zero(), r));
            }
            return rat_sqrt(&sre).map(Self::real);
        }
        let two = BigRational::from_integer(BigInt::from(2));
        let m = rat_sqrt(&self.norm_sqr())?;
        let re = rat_sqrt(&((&m + &sre) / &two))?;
        let mut im = rat_sqrt(&((&m - &sre) / &two))?;
        if sim.is_negative() {
            im = -im;
        }
        let r = Self::new(re, im);
        debug_assert_eq!(&(&r * &r), self);
        Some(r)
    }

    /// Exact cube root in `Q(i)`, if one exists.
    pub fn cbrt(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (sre, sim) = self.parts();
        if sim.is_zero() {
            return rat_cbrt(&sre).map(Self::real);
        }
        if sre.is_zero() {
            // (-i c)^3 = i c^3
            return rat_cbrt(&sim).map(|c| Self::new(BigRational::zero(), -c));
        }
        // General case: rationalise the three floating cube roots and verify exactly.
        let x = self.to_c64();
        let (r, theta) = x.to_polar();
        for k in 0..3 {
            let ang = (theta + 2.0 * std::f64::consts::PI * k as f64) / 3.0;
            let cand = Complex64::from_polar(r.cbrt(), ang);
            if let (Some(re), Some(im)) = (approx_rational(cand.re), approx_rational(cand.im)) {
                let g = Self::new(re, im);
                if &g.pow(3) == self {
                    return Some(g);
                }
            }
        }
        None
    }

    /// Canonical text form, e.g. `3/2`, `-i`, `1/2+3i`, `-2/3i`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge numerators/denominators before dividing.
            let nb = r.numer().bits() as i64;
            let db = r.denom().bits() as i64;
            let shift_n = (nb - 60).max(0) as usize;
            let shift_d = (db - 60).max(0) as usize;
            let n = (r.numer() >> shift_n).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift_d).to_f64().unwrap_or(1.0);
            n / d * 2f64.powi(shift_n as i32 - shift_d as i32)
        }
    }
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rat_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = int_sqrt_exact(r.numer())?;
    let d = int_sqrt_exact(r.denom())?;
    Some(BigRational::new(n, d))
}

fn rat_cbrt(r: &BigRational) -> Option<BigRational> {
    let cbrt_int = |n: &BigInt| -> Option<BigInt> {
        let c = n.cbrt();
        (&c * &c * &c == *n).then_some(c)
    };
    Some(BigRational::new(cbrt_int(r.numer())?, cbrt_int(r.denom())?))
}

/// Continued-fraction rationalisation with denominators up to 10^6.
fn approx_rational(x: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..40 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > 1_000_000 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if (h1 as f64 / k1 as f64 - x).abs() <= 1e-12 * x.abs().max(1.0) || frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    (k1 != 0).then(|| BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        // Terminating decimals are accepted and converted exactly.
        let neg = ip.trim_start().starts_with('-');
        let ip: BigInt = if ip.is_empty() || ip == "-" || ip == "+" {
            BigInt::zero()
        } else {
            ip.parse().map_err(|_| bad())?
        };
        if fp.is_empty() || !fp.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let scale = BigInt::from(10u32).pow(fp.len() as u32);
        let frac: BigInt = fp.parse().map_err(|_| bad())?;
        let mag = ip.abs() * &scale + frac;
        let num = if neg { -mag } else { mag };
        return Ok(BigRational::new(num, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

impl FromStr for GaussRat {
    type Err = Error;

    /// Accepts `p/q`, integers, terminating decimals, and `a+bi` / `a-bi` / `bi` forms.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Parse("empty number".into()));
        }
        if let Some(body) = t.strip_suffix('i') {
            // find the split between real and imaginary parts: last +/- not at position 0
            // and not directly after '/'
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'/' {
                    split = Some(k);
                    break;
                }
            }
            let (re_s, im_s) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im = match im_s {
                "" | "+" => BigRational::one(),
                "-" => -BigRational::one(),
                other => parse_rational(other.trim_start_matches('+'))?,
            };
            return Ok(Self::new(parse_rational(re_s)?, im));
        }
        parse_rational(&t).map(Self::real)
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.parts();
        if im.is_zero() {
            return f.write_str(&fmt_rat(&re));
        }
        let im_abs = im.abs();
        let im_txt = if im_abs.is_one() { String::new() } else { fmt_rat(&im_abs) };
        if re.is_zero() {
            let sign = if im.is_negative() { "-" } else { "" };
            return write!(f, "{sign}{im_txt}i");
        }
        let sign = if im.is_negative() { '-' } else { '+' };
        write!(f, "{}{sign}{im_txt}i", fmt_rat(&re))
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for GaussRat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (re, im) = self.parts();
        if im.is_zero() {
            s.serialize_str(&fmt_rat(&re))
        } else {
            let mut st = s.serialize_struct("GaussRat", 2)?;
            st.serialize_field("re", &fmt_rat(&re))?;
            st.serialize_field("im", &fmt_rat(&im))?;
            st.end()
        }
    }
}

impl<'de> Deserialize<'de> for GaussRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = GaussRat;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\", an integer, or {\"re\":…, \"im\":…}")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<GaussRat, E> {
                v.parse().map_err(|e: Error| E::custom(e.to_string()))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<GaussRat, E> {
                Ok(GaussRat::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<GaussRat, E> {
                Ok(GaussRat::real(BigRational::from_integer(BigInt::from(v))))
            }

            fn visit_map<A: de::MapAccess<'de>>(self, mut map: A) -> Result<GaussRat, A::Error> {
                let mut re = None;
                let mut im = None;
                while let Some(key) = map.next_key::<String>()? {
                    let val: GaussRat = map.next_value()?;
                    if !val.is_real() {
                        return Err(de::Error::custom("nested complex value"));
                    }
                    match key.as_str() {
                        "re" => re = Some(val.re()),
                        "im" => im = Some(val.re()),
                        other => return Err(de::Error::unknown_field(other, &["re", "im"])),
                    }
                }
                Ok(GaussRat::new(
                    re.unwrap_or_else(BigRational::zero),
                    im.unwrap_or_else(BigRational::zero),
                ))
            }
        }
        d.deserialize_any(V)
    }
}

fn small(x: &GaussRat) -> Option<(i128, i128, i128)> {
    match x.0 {
        Repr::Small { re, im, den } => Some((re, im, den)),
        Repr::Big { .. } => None,
    }
}

fn add_small(x: (i128, i128, i128), y: (i128, i128, i128), sign: i128) -> Option<GaussRat> {
    let (a1, b1, d1) = x;
    let (a2, b2, d2) = y;
    if d1 == d2 {
        return Some(GaussRat::from_i128(a1.checked_add(sign * a2)?, b1.checked_add(sign * b2)?, d1));
    }
    let re = a1.checked_mul(d2)?.checked_add(sign * a2.checked_mul(d1)?)?;
    let im = b1.checked_mul(d2)?.checked_add(sign * b2.checked_mul(d1)?)?;
    Some(GaussRat::from_i128(re, im, d1.checked_mul(d2)?))
}

fn mul_small(x: (i128, i128, i128), y: (i128, i128, i128)) -> Option<GaussRat> {
    let (a1, b1, d1) = x;
    let (a2, b2, d2) = y;
    let re = a1.checked_mul(a2)?.checked_sub(b1.checked_mul(b2)?)?;
    let im = a1.checked_mul(b2)?.checked_add(b1.checked_mul(a2)?)?;
    Some(GaussRat::from_i128(re, im, d1.checked_mul(d2)?))
}

fn div_small(x: (i128, i128, i128), y: (i128, i128, i128)) -> Option<GaussRat> {
    // (a1 + i b1)/d1 · d2 (a2 − i b2)/(a2² + b2²)
    let (a1, b1, d1) = x;
    let (a2, b2, d2) = y;
    let n = a2.checked_mul(a2)?.checked_add(b2.checked_mul(b2)?)?;
    let re = a1.checked_mul(a2)?.checked_add(b1.checked_mul(b2)?)?.checked_mul(d2)?;
    let im = b1.checked_mul(a2)?.checked_sub(a1.checked_mul(b2)?)?.checked_mul(d2)?;
    Some(GaussRat::from_i128(re, im, d1.checked_mul(n)?))
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, o: &GaussRat) -> GaussRat {
        if let (Some(x), Some(y)) = (small(self), small(o)) {
            if let Some(r) = add_small(x, y, 1) {
                return r;
            }
        }
        let ((r1, i1), (r2, i2)) = (self.parts(), o.parts());
        GaussRat::from_big(r1 + r2, i1 + i2)
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, o: &GaussRat) -> GaussRat {
        if let (Some(x), Some(y)) = (small(self), small(o)) {
            if let Some(r) = add_small(x, y, -1) {
                return r;
            }
        }
        let ((r1, i1), (r2, i2)) = (self.parts(), o.parts());
        GaussRat::from_big(r1 - r2, i1 - i2)
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, o: &GaussRat) -> GaussRat {
        if let (Some(x), Some(y)) = (small(self), small(o)) {
            if let Some(r) = mul_small(x, y) {
                return r;
            }
        }
        let ((r1, i1), (r2, i2)) = (self.parts(), o.parts());
        GaussRat::from_big(&r1 * &r2 - &i1 * &i2, &r1 * &i2 + &i1 * &r2)
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, o: &GaussRat) -> GaussRat {
        assert!(!o.is_zero(), "division by zero");
        if let (Some(x), Some(y)) = (small(self), small(o)) {
            if let Some(r) = div_small(x, y) {
                return r;
            }
        }
        let ((r1, i1), (r2, i2)) = (self.parts(), o.parts());
        let n = &r2 * &r2 + &i2 * &i2;
        GaussRat::from_big((&r1 * &r2 + &i1 * &i2) / &n, (&i1 * &r2 - &r1 * &i2) / &n)
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        match &self.0 {
            Repr::Small { re, im, den } => GaussRat::from_i128(-*re, -*im, *den),
            Repr::Big { re, im } => GaussRat(Repr::Big { re: -re.clone(), im: -im.clone() }),
        }
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, o: GaussRat) -> GaussRat { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, o: &GaussRat) -> GaussRat { (&self).$m(o) }
        }
        impl<'a> $tr<GaussRat> for &'a GaussRat {
            type Output = GaussRat;
            fn $m(self, o: GaussRat) -> GaussRat { self.$m(&o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, o: &GaussRat) {
        *self = &*self + o;
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, o: &GaussRat) {
        *self = &*self - o;
    }
}

impl MulAssign<&GaussRat> for GaussRat {
    fn mul_assign(&mut self, o: &GaussRat) {
        *self = &*self * o;
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussRat {
    fn from(r: BigRational) -> Self {
        Self::real(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> GaussRat {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_print() {
        for s in ["3/2", "-7", "i", "-i", "1/2+3i", "-2/3i", "5-1/4i"] {
            assert_eq!(g(s).to_string(), s);
        }
        assert_eq!(g("0.25"), GaussRat::ratio(1, 4));
        assert_eq!(g("-1.5"), GaussRat::ratio(-3, 2));
        assert!("3/0".parse::<GaussRat>().is_err());
        assert!("abc".parse::<GaussRat>().is_err());
    }

    #[test]
    fn field_ops() {
        let a = g("1+2i");
        let b = g("3-i");
        assert_eq!(&a * &b, g("5+5i"));
        assert_eq!(&(&a / &b) * &b, a);
        assert_eq!(a.inv().unwrap() * &a, GaussRat::one());
        assert!(GaussRat::zero().inv().is_none());
    }

    #[test]
    fn exact_roots() {
        assert_eq!(g("9/4").sqrt(), Some(g("3/2")));
        assert_eq!(g("-4").sqrt(), Some(g("2i")));
        assert_eq!(g("2i").sqrt(), Some(g("1+i")));
        assert_eq!(g("-16").sqrt(), Some(g("4i")));
        assert_eq!(g("2").sqrt(), None);
        assert_eq!(g("-8/27").cbrt(), Some(g("-2/3")));
        assert_eq!(g("i").cbrt(), Some(g("-i")));
        assert_eq!(g("4/3").cbrt(), None);
        let x = g("2+3i").pow(3);
        let r = x.cbrt().unwrap();
        assert_eq!(r.pow(3), x);
    }

    #[test]
    fn json_forms() {
        let v: GaussRat = serde_json::from_str("\"-3/4\"").unwrap();
        assert_eq!(v, GaussRat::ratio(-3, 4));
        let v: GaussRat = serde_json::from_str(r#"{"re":"1/2","im":"-1"}"#).unwrap();
        assert_eq!(v, g("1/2-i"));
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"re":"1/2","im":"-1"}"#);
        let v: GaussRat = serde_json::from_str("5").unwrap();
        assert_eq!(v, GaussRat::from_int(5));
    }
}
