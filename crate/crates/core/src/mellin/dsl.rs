//! Text form of test functions.
//!
//! ```text
//! expr     := loggauss | jw | scale | conv | smooth | sum | conj
//! loggauss := "loggauss:" param ("," param)*      param := ("a" | "mu" | "amp") "=" number
//! jw       := "j" ("1" | "2") "(" expr ")"
//! scale    := "scale:" real "(" expr ")"
//! conv     := "conv(" expr "," expr ")"
//! smooth   := "smooth(" expr ")"
//! sum      := "sum(" expr (";" expr)* ")"
//! conj     := "conj(" expr ")"
//! number   := real | real ("+" | "-") real "i"
//! ```
//!
//! Whitespace is ignored everywhere. `a` and `mu` are required; `amp`
//! defaults to 1. Inside `conv(...)` a comma continues a `loggauss` parameter
//! list only when it is followed by `a=`, `mu=` or `amp=`.

use super::{apply_j, mult_convolve, scale_action, smoothed_image, TestFunction};
use crate::error::{Error, Result};
use crate::specfun::Complex;

pub fn parse_test_function(input: &str) -> Result<TestFunction> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { src: &compact, pos: 0 };
    let f = p.expr()?;
    if p.pos != compact.len() {
        return Err(p.error("trailing input"));
    }
    Ok(f)
}

impl std::str::FromStr for TestFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_test_function(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error(&self, message: &str) -> Error {
        let token: String = self.rest().chars().take(16).collect();
        let token = if token.is_empty() { "<end>".to_string() } else { token };
        Error::Parse { token, message: message.to_string() }
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.rest().starts_with(lit) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<()> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{lit}`")))
        }
    }

    fn wrap<T>(&self, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => self.error(&other.to_string()),
        })
    }

    fn expr(&mut self) -> Result<TestFunction> {
        let start = self.pos;
        if self.eat("loggauss:") {
            return self.loggauss();
        }
        if self.eat("scale:") {
            let lambda = self.real()?;
            self.expect("(")?;
            let child = self.expr()?;
            self.expect(")")?;
            return self.wrap(scale_action(child, lambda));
        }
        if self.eat("conv(") {
            let l = self.expr()?;
            self.expect(",")?;
            let r = self.expr()?;
            self.expect(")")?;
            return self.wrap(mult_convolve(l, r));
        }
        if self.eat("smooth(") {
            let h = self.expr()?;
            self.expect(")")?;
            return self.wrap(smoothed_image(h));
        }
        if self.eat("sum(") {
            let mut children = vec![self.expr()?];
            while self.eat(";") {
                children.push(self.expr()?);
            }
            self.expect(")")?;
            return self.wrap(TestFunction::sum(children));
        }
        if self.eat("conj(") {
            let child = self.expr()?;
            self.expect(")")?;
            return Ok(child.conj());
        }
        if self.eat("j") {
            let w = match self.rest().as_bytes().first() {
                Some(b'1') => 1,
                Some(b'2') => 2,
                _ => return Err(self.error("J weight must be 1 or 2")),
            };
            self.pos += 1;
            self.expect("(")?;
            let child = self.expr()?;
            self.expect(")")?;
            return self.wrap(apply_j(child, w));
        }
        self.pos = start;
        Err(self.error("expected a test function"))
    }

    fn loggauss(&mut self) -> Result<TestFunction> {
        let (mut a, mut mu, mut amp) = (None, None, None);
        loop {
            if self.eat("amp=") {
                amp = Some(self.number()?);
            } else if self.eat("mu=") {
                mu = Some(self.real()?);
            } else if self.eat("a=") {
                a = Some(self.real()?);
            } else {
                return Err(self.error("expected a=, mu= or amp="));
            }
            let r = self.rest();
            let continues = r.starts_with(",a=") || r.starts_with(",mu=") || r.starts_with(",amp=");
            if !continues {
                break;
            }
            self.pos += 1;
        }
        let a = a.ok_or_else(|| self.error("loggauss needs a="))?;
        let mu = mu.ok_or_else(|| self.error("loggauss needs mu="))?;
        self.wrap(TestFunction::log_gaussian(a, mu, amp.unwrap_or(Complex::new(1.0, 0.0))))
    }

    /// Longest prefix that parses as a float literal.
    fn real(&mut self) -> Result<f64> {
        let bytes = self.rest().as_bytes();
        let mut end = 0;
        let mut best = None;
        while end < bytes.len() {
            let c = bytes[end];
            let ok = c.is_ascii_digit()
                || matches!(c, b'.' | b'e' | b'E')
                || (matches!(c, b'+' | b'-') && (end == 0 || matches!(bytes[end - 1], b'e' | b'E')));
            if !ok {
                break;
            }
            end += 1;
            if let Ok(v) = self.rest()[..end].parse::<f64>() {
                best = Some((end, v));
            }
        }
        match best {
            Some((len, v)) if v.is_finite() => {
                self.pos += len;
                Ok(v)
            }
            _ => Err(self.error("expected a number")),
        }
    }

    fn number(&mut self) -> Result<Complex> {
        let re = self.real()?;
        let r = self.rest();
        if r.starts_with('+') || r.starts_with('-') {
            let save = self.pos;
            let neg = r.starts_with('-');
            self.pos += 1;
            if let Ok(im) = self.real() {
                if self.eat("i") {
                    return Ok(Complex::new(re, if neg { -im } else { im }));
                }
            }
            self.pos = save;
        }
        Ok(Complex::new(re, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        let src = "sum( j1(loggauss:a=100, mu=0.5) ; scale:2(conv(loggauss:a=1,mu=0,loggauss:a=2,mu=1,amp=0.5-2i)) ; smooth(loggauss:mu=-1,a=3) ; conj(loggauss:a=4,mu=0,amp=1+1e-3i))";
        let f = parse_test_function(src).unwrap();
        let TestFunction::Sum(children) = &f else { panic!("{f:?}") };
        assert_eq!(children.len(), 4);
        assert!(matches!(children[0], TestFunction::Jw { w: 1, .. }));
        assert!(matches!(children[2], TestFunction::ThetaSmoothed { .. }));
        let TestFunction::Scale { child, .. } = &children[1] else { panic!() };
        let TestFunction::MultConv(_, r) = child.as_ref() else { panic!() };
        assert_eq!(
            **r,
            TestFunction::log_gaussian(2.0, 1.0, Complex::new(0.5, -2.0)).unwrap()
        );
    }

    #[test]
    fn printing_round_trips() {
        for src in [
            "loggauss:a=100,mu=0",
            "j2(scale:0.3333333333333333(loggauss:a=1,mu=-0.5,amp=2-1i))",
            "sum(loggauss:a=1,mu=0;conj(loggauss:a=2,mu=0.1,amp=0+3i))",
            "smooth(conv(loggauss:a=1,mu=0,loggauss:a=7,mu=2))",
        ] {
            let f = parse_test_function(src).unwrap();
            assert_eq!(parse_test_function(&f.to_string()).unwrap(), f, "{src}");
        }
    }

    #[test]
    fn normalizes_while_parsing() {
        let f = parse_test_function("j1(j1(loggauss:a=5,mu=0))").unwrap();
        assert_eq!(f, TestFunction::real_log_gaussian(5.0, 0.0).unwrap());
    }

    #[test]
    fn reports_errors() {
        for bad in [
            "",
            "loggauss:a=0,mu=0",
            "loggauss:a=1",
            "j3(loggauss:a=1,mu=0)",
            "sum()",
            "conv(loggauss:a=1,mu=0)",
            "loggauss:a=1,mu=0)",
            "gauss:a=1,mu=0",
        ] {
            assert!(matches!(parse_test_function(bad), Err(Error::Parse { .. })), "{bad}");
        }
    }
}
