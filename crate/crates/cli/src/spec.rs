//! The group-spec mini-language.
//!
//! ```text
//! spec  := atom | "prod(" spec "," spec ")" | "sd(" int "," int "," int ")"
//! atom  := "C" int | "D" int | "Q" int | "SL2(" int ")" | "2T" | "2O" | "2I"
//!        | "2D" int | "quat(" quaternion ("," quaternion)* ")"
//! quaternion := "q(" comp "," comp "," comp "," comp ")"
//! comp  := term (("+" | "-") term)*
//! term  := sign* (rational ("*" unit)? | unit)
//! unit  := "r2" | "r5" | "z" int ("^" int)?
//! ```
//!
//! Keywords are case-insensitive. `r2` and `r5` are √2 and √5, `zN^k` is
//! exp(2πik/N).

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use freerep::constructors::{self, PolyhedralKind, SemidirectParams};
use freerep::cyclotomic::Cyclotomic;
use freerep::quaternion::{finite_quaternion_group, Quaternion};
use freerep::{Group, Result};

/// Largest N accepted in `zN`.
pub const MAX_ROOT_OF_UNITY: u32 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion(usize),
    Sl2(u64),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
    BinaryDihedral(usize),
    Quat(Vec<Quaternion<Cyclotomic>>),
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Semidirect { m: usize, n: usize, r: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion(n) => write!(f, "Q{n}"),
            GroupSpec::Sl2(p) => write!(f, "SL2({p})"),
            GroupSpec::BinaryTetrahedral => write!(f, "2T"),
            GroupSpec::BinaryOctahedral => write!(f, "2O"),
            GroupSpec::BinaryIcosahedral => write!(f, "2I"),
            GroupSpec::BinaryDihedral(n) => write!(f, "2D{n}"),
            GroupSpec::Quat(gens) => {
                let parts: Vec<String> = gens.iter().map(|q| q.to_string()).collect();
                write!(f, "quat({})", parts.join(","))
            }
            GroupSpec::Product(a, b) => write!(f, "prod({a},{b})"),
            GroupSpec::Semidirect { m, n, r } => write!(f, "sd({m},{n},{r})"),
        }
    }
}

impl GroupSpec {
    pub fn build(&self, quaternion_cap: usize) -> Result<Group> {
        let g = match self {
            GroupSpec::Cyclic(n) => constructors::cyclic(*n)?,
            GroupSpec::Dihedral(n) => constructors::dihedral(*n)?,
            GroupSpec::Quaternion(n) => constructors::generalized_quaternion(*n)?,
            GroupSpec::Sl2(p) => constructors::sl2(*p)?,
            GroupSpec::BinaryTetrahedral => constructors::binary_polyhedral(PolyhedralKind::Tetrahedral)?,
            GroupSpec::BinaryOctahedral => constructors::binary_polyhedral(PolyhedralKind::Octahedral)?,
            GroupSpec::BinaryIcosahedral => constructors::binary_polyhedral(PolyhedralKind::Icosahedral)?,
            GroupSpec::BinaryDihedral(n) => constructors::binary_polyhedral(PolyhedralKind::Dihedral(*n))?,
            GroupSpec::Quat(gens) => finite_quaternion_group(gens, quaternion_cap)?,
            GroupSpec::Product(a, b) => {
                constructors::direct_product(&a.build(quaternion_cap)?, &b.build(quaternion_cap)?)?
            }
            GroupSpec::Semidirect { m, n, r } => {
                constructors::semidirect_cyclic(SemidirectParams::new(*m, *n, *r)?)?
            }
        };
        Ok(g)
    }
}

pub fn parse_group_spec(text: &str) -> std::result::Result<GroupSpec, ParseError> {
    let mut p = Parser { src: text.to_ascii_lowercase().into_bytes(), pos: 0 };
    let spec = p.spec()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(spec)
}

struct Parser {
    src: Vec<u8>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { position: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> std::result::Result<(), ParseError> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{token}'")))
        }
    }

    fn digits(&mut self) -> std::result::Result<&str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn uint<T: std::str::FromStr>(&mut self) -> std::result::Result<T, ParseError> {
        let start = self.pos;
        let d = self.digits()?.to_string();
        d.parse().map_err(|_| ParseError { position: start, message: format!("number {d} out of range") })
    }

    fn int(&mut self) -> std::result::Result<i64, ParseError> {
        let negative = self.eat("-");
        let v: i64 = self.uint()?;
        Ok(if negative { -v } else { v })
    }

    fn spec(&mut self) -> std::result::Result<GroupSpec, ParseError> {
        if self.eat("prod(") {
            let a = self.spec()?;
            self.expect(",")?;
            let b = self.spec()?;
            self.expect(")")?;
            return Ok(GroupSpec::Product(Box::new(a), Box::new(b)));
        }
        if self.eat("sd(") {
            let m = self.uint()?;
            self.expect(",")?;
            let n = self.uint()?;
            self.expect(",")?;
            let r = self.int()?;
            self.expect(")")?;
            return Ok(GroupSpec::Semidirect { m, n, r });
        }
        if self.eat("quat(") {
            let mut gens = vec![self.quaternion()?];
            while self.eat(",") {
                gens.push(self.quaternion()?);
            }
            self.expect(")")?;
            return Ok(GroupSpec::Quat(gens));
        }
        if self.eat("sl2(") {
            let p = self.uint()?;
            self.expect(")")?;
            return Ok(GroupSpec::Sl2(p));
        }
        if self.eat("2t") {
            return Ok(GroupSpec::BinaryTetrahedral);
        }
        if self.eat("2o") {
            return Ok(GroupSpec::BinaryOctahedral);
        }
        if self.eat("2i") {
            return Ok(GroupSpec::BinaryIcosahedral);
        }
        if self.eat("2d") {
            return Ok(GroupSpec::BinaryDihedral(self.uint()?));
        }
        match self.peek() {
            Some(b'c') => {
                self.pos += 1;
                Ok(GroupSpec::Cyclic(self.uint()?))
            }
            Some(b'd') => {
                self.pos += 1;
                Ok(GroupSpec::Dihedral(self.uint()?))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(GroupSpec::Quaternion(self.uint()?))
            }
            Some(_) => Err(self.error("unknown group")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn quaternion(&mut self) -> std::result::Result<Quaternion<Cyclotomic>, ParseError> {
        self.expect("q(")?;
        let w = self.component()?;
        self.expect(",")?;
        let x = self.component()?;
        self.expect(",")?;
        let y = self.component()?;
        self.expect(",")?;
        let z = self.component()?;
        self.expect(")")?;
        Ok(Quaternion::new(w, x, y, z))
    }

    fn component(&mut self) -> std::result::Result<Cyclotomic, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = &acc + &self.term()?;
            } else if self.eat("-") {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Cyclotomic, ParseError> {
        let mut negative = false;
        loop {
            if self.eat("-") {
                negative = !negative;
            } else if !self.eat("+") {
                break;
            }
        }
        let value = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num: BigInt = self.digits()?.parse().expect("digits");
            let den: BigInt = if self.eat("/") { self.digits()?.parse().expect("digits") } else { BigInt::from(1) };
            if den == BigInt::from(0) {
                return Err(self.error("zero denominator"));
            }
            let q = Cyclotomic::from_rational(1, &BigRational::new(num, den));
            if self.eat("*") {
                &q * &self.unit()?
            } else {
                q
            }
        } else {
            self.unit()?
        };
        Ok(if negative { -&value } else { value })
    }

    fn unit(&mut self) -> std::result::Result<Cyclotomic, ParseError> {
        if self.eat("r2") {
            return Ok(Cyclotomic::sqrt2());
        }
        if self.eat("r5") {
            return Ok(Cyclotomic::sqrt5());
        }
        if self.eat("z") {
            let start = self.pos;
            let n: u32 = self.uint()?;
            if n == 0 || n > MAX_ROOT_OF_UNITY {
                return Err(ParseError { position: start, message: format!("root of unity order {n} out of range") });
            }
            let k = if self.eat("^") { self.int()? } else { 1 };
            return Ok(Cyclotomic::zeta_pow(n, k));
        }
        Err(self.error("expected a number, r2, r5 or zN"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(parse_group_spec("C12").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(parse_group_spec("sd(7,9,2)").unwrap(), GroupSpec::Semidirect { m: 7, n: 9, r: 2 });
        assert_eq!(parse_group_spec("sd(7, 9, -1)").unwrap(), GroupSpec::Semidirect { m: 7, n: 9, r: -1 });
        let p = parse_group_spec("prod(C5,2O)").unwrap();
        assert_eq!(p.to_string(), "prod(C5,2O)");
        assert_eq!(p.build(2000).unwrap().order(), 240);
        assert_eq!(parse_group_spec("sl2(7)").unwrap(), GroupSpec::Sl2(7));
        assert_eq!(parse_group_spec("2d7").unwrap().build(2000).unwrap().order(), 28);
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_group_spec("prod(C5 2O)").unwrap_err().position, 8);
        assert_eq!(parse_group_spec("X3").unwrap_err().position, 0);
        assert_eq!(parse_group_spec("C12)").unwrap_err().message, "unexpected trailing input");
        assert!(parse_group_spec("quat(q(1/0,0,0,0))").is_err());
        assert!(parse_group_spec("quat(q(z0,0,0,0))").is_err());
        assert!(parse_group_spec("quat(q(z99999,0,0,0))").is_err());
    }

    #[test]
    fn quaternion_literals() {
        let g = parse_group_spec("quat(q(1/2,1/2,1/2,1/2), q(0,1,0,0))").unwrap().build(2000).unwrap();
        assert_eq!(g.order(), 24);
        let o = parse_group_spec("quat(q(1/2*r2,1/2*r2,0,0),q(1/2,1/2,1/2,1/2))").unwrap().build(2000).unwrap();
        assert_eq!(o.order(), 48);
        let i = parse_group_spec("quat(q(1/2,1/2,1/2,1/2),q(1/4+1/4*r5,-1/4+1/4*r5,1/2,0))")
            .unwrap()
            .build(2000)
            .unwrap();
        assert_eq!(i.order(), 120);
        let c = parse_group_spec("quat(q(1/2*z8 - 1/2*z8^3, 1/2*z8 + -1/2*z8^3, 0, 0))").unwrap();
        assert_eq!(c.build(2000).unwrap().order(), 8);
    }
}
