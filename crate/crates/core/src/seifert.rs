//! Brieskorn sphere expressions and normalized Seifert invariants.
//!
//! A Brieskorn sphere `Sigma(a1,...,an)` in its standard orientation (the
//! link of the singularity) is stored as a negative Seifert fibration. The
//! reversed orientation is carried as a flag on the summand and never
//! recomputed here.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("multiplicities {0} and {1} are not coprime")]
    NotCoprime(BigInt, BigInt),
    #[error("multiplicity {0} is smaller than 2")]
    MultiplicityTooSmall(BigInt),
    #[error("need at least 3 multiplicities, got {0}")]
    TooFewFibers(usize),
}

impl SeifertError {
    pub fn is_syntax(&self) -> bool {
        matches!(self, SeifertError::Syntax { .. })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Oriented as the link of the singularity (negative fibration).
    Positive,
    /// Orientation reversed.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Summand {
    pub multiplicities: Vec<BigInt>,
    pub orientation: Orientation,
}

impl Summand {
    pub fn new<T: Into<BigInt> + Clone>(mults: &[T], orientation: Orientation) -> Self {
        Summand {
            multiplicities: mults.iter().cloned().map(Into::into).collect(),
            orientation,
        }
    }

    /// Multiplicities with the unit fibers removed. Fibers of multiplicity 1
    /// are not exceptional, so `Sigma(1,a,b,c) = Sigma(a,b,c)`.
    pub fn exceptional(&self) -> Vec<BigInt> {
        self.multiplicities
            .iter()
            .filter(|a| !a.is_one())
            .cloned()
            .collect()
    }

    /// True when the summand is diffeomorphic to the 3-sphere: fewer than
    /// three exceptional fibers remain.
    pub fn is_trivial(&self) -> bool {
        self.exceptional().len() < 3
    }

    pub fn is_reversed(&self) -> bool {
        self.orientation == Orientation::Reversed
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_reversed() {
            write!(f, "-")?;
        }
        let parts: Vec<String> = self.multiplicities.iter().map(|a| a.to_string()).collect();
        write!(f, "Sigma({})", parts.join(","))
    }
}

/// An oriented formal connected sum of Brieskorn spheres, or `S3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertPresentation {
    pub summands: Vec<Summand>,
    pub is_s3: bool,
}

impl SeifertPresentation {
    pub fn s3() -> Self {
        SeifertPresentation {
            summands: Vec::new(),
            is_s3: true,
        }
    }

    pub fn from_summands(summands: Vec<Summand>) -> Self {
        SeifertPresentation {
            summands,
            is_s3: false,
        }
    }

    /// Summands that are not diffeomorphic to `S^3`.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Summand> {
        self.summands.iter().filter(|s| !s.is_trivial())
    }
}

impl fmt::Display for SeifertPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_s3 {
            return write!(f, "S3");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" # "))
    }
}

impl std::str::FromStr for SeifertPresentation {
    type Err = SeifertError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

/// Parse `S3 | term ('#' term)*` where
/// `term := ['-'] 'Sigma(' int ',' int (',' int)* ')' | int '*' term`.
pub fn parse(input: &str) -> Result<SeifertPresentation, SeifertError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    p.skip_ws();
    if p.eat_keyword("S3") {
        p.skip_ws();
        if !p.at_end() {
            return Err(p.error("unexpected input after S3"));
        }
        return Ok(SeifertPresentation::s3());
    }
    let mut summands = Vec::new();
    loop {
        p.term(&mut summands)?;
        p.skip_ws();
        if p.at_end() {
            break;
        }
        if !p.eat(b'#') {
            return Err(p.error("expected '#' or end of input"));
        }
    }
    for s in &summands {
        validate_multiplicities(&s.multiplicities)?;
    }
    Ok(SeifertPresentation::from_summands(summands))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn error(&self, message: &str) -> SeifertError {
        SeifertError::Syntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), SeifertError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<BigInt, SeifertError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digit string parses"))
    }

    fn term(&mut self, out: &mut Vec<Summand>) -> Result<(), SeifertError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let count = self.int()?;
                self.expect(b'*')?;
                if count.is_zero() {
                    return Err(SeifertError::Syntax {
                        position: at,
                        message: "repetition count must be positive".into(),
                    });
                }
                let mut inner = Vec::new();
                self.term(&mut inner)?;
                let mut k = BigInt::zero();
                while k < count {
                    out.extend(inner.iter().cloned());
                    k += 1;
                }
                Ok(())
            }
            _ => {
                let orientation = if self.eat(b'-') {
                    Orientation::Reversed
                } else {
                    Orientation::Positive
                };
                self.skip_ws();
                if !self.eat_keyword("Sigma") {
                    return Err(self.error("expected 'Sigma'"));
                }
                self.expect(b'(')?;
                let mut mults = vec![self.int()?];
                self.expect(b',')?;
                mults.push(self.int()?);
                while self.eat(b',') {
                    mults.push(self.int()?);
                }
                self.expect(b')')?;
                out.push(Summand {
                    multiplicities: mults,
                    orientation,
                });
                Ok(())
            }
        }
    }
}

/// Domain checks of a summand built outside the parser.
pub fn validate(summand: &Summand) -> Result<(), SeifertError> {
    validate_multiplicities(&summand.multiplicities)
}

/// Domain checks shared by the parser and [`normalize`]: no zero
/// multiplicities and pairwise coprimality.
fn validate_multiplicities(mults: &[BigInt]) -> Result<(), SeifertError> {
    if let Some(a) = mults.iter().find(|a| !a.is_positive()) {
        return Err(SeifertError::MultiplicityTooSmall(a.clone()));
    }
    for (i, a) in mults.iter().enumerate() {
        for b in &mults[i + 1..] {
            if !a.gcd(b).is_one() {
                return Err(SeifertError::NotCoprime(a.clone(), b.clone()));
            }
        }
    }
    Ok(())
}

/// Exceptional fiber `(a, b)` with `0 < b < a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fiber {
    pub a: BigInt,
    pub b: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertInvariants {
    pub e0: BigInt,
    pub fibers: Vec<Fiber>,
    /// Orbifold degree `e0 + sum b_i / a_i`, equal to `-1 / prod a_i`.
    pub e: BigRational,
}

impl SeifertInvariants {
    pub fn order(&self) -> BigInt {
        self.fibers.iter().map(|f| f.a.clone()).product()
    }
}

/// Normalized Seifert invariants of the homology sphere `Sigma(a1,...,an)`.
///
/// Each `b_i` is the solution of `(a/a_i) b_i = -1 (mod a_i)` in `(0, a_i)`,
/// and `e0 = (-1 - sum (a/a_i) b_i) / a`.
pub fn normalize(mults: &[BigInt]) -> Result<SeifertInvariants, SeifertError> {
    if mults.len() < 3 {
        return Err(SeifertError::TooFewFibers(mults.len()));
    }
    if let Some(a) = mults.iter().find(|a| *a < &BigInt::from(2)) {
        return Err(SeifertError::MultiplicityTooSmall(a.clone()));
    }
    validate_multiplicities(mults)?;

    let order: BigInt = mults.iter().product();
    let mut fibers = Vec::with_capacity(mults.len());
    let mut total = BigInt::zero();
    for ai in mults {
        let cofactor = &order / ai;
        // cofactor * inv = 1 (mod ai)
        let egcd = cofactor.mod_floor(ai).extended_gcd(ai);
        debug_assert!(egcd.gcd.is_one());
        let b = (-egcd.x).mod_floor(ai);
        total += &cofactor * &b;
        fibers.push(Fiber { a: ai.clone(), b });
    }
    let numer = BigInt::from(-1) - total;
    debug_assert!(numer.is_multiple_of(&order));
    let e0 = numer / &order;
    let e = fibers
        .iter()
        .fold(BigRational::from_integer(e0.clone()), |acc, f| {
            acc + BigRational::new(f.b.clone(), f.a.clone())
        });
    debug_assert_eq!(e, BigRational::new(BigInt::from(-1), order.clone()));
    Ok(SeifertInvariants { e0, fibers, e })
}
