//! Plane curves with integer coefficients, their text format, and
//! brute-force point counts over extensions of the base field.

use std::path::Path;

use rayon::prelude::*;

use super::field::{FiniteField, ENUMERATION_BOUND};
use crate::error::{Error, Result};

/// `coef * x^e[0] y^e[1] z^e[2]`, coefficient reduced into `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coef: i64,
    pub exps: [u32; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    pub terms: Vec<Term>,
}

impl Polynomial {
    pub fn parse(text: &str) -> Result<Self> {
        parse_poly(text).map_err(|msg| Error::Invalid(format!("bad polynomial {text:?}: {msg}")))
    }

    fn degree_of(t: &Term) -> u32 {
        t.exps.iter().sum()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(Self::degree_of);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    fn uses_z(&self) -> bool {
        self.terms.iter().any(|t| t.exps[2] > 0)
    }

    /// Combines like terms modulo `p` and drops zeros.
    fn reduced(&self, p: u32) -> Self {
        let mut out: Vec<Term> = Vec::new();
        for t in &self.terms {
            match out.iter_mut().find(|u| u.exps == t.exps) {
                Some(u) => u.coef = (u.coef + t.coef).rem_euclid(p as i64),
                None => out.push(Term {
                    coef: t.coef.rem_euclid(p as i64),
                    exps: t.exps,
                }),
            }
        }
        out.retain(|t| t.coef != 0);
        Self { terms: out }
    }

    fn minus(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().map(|t| Term { coef: -t.coef, exps: t.exps }));
        Self { terms }
    }

    fn eval(&self, f: &FiniteField, coefs: &[u32], v: [u32; 3]) -> u32 {
        let mut acc = 0;
        for (t, &c) in self.terms.iter().zip(coefs) {
            let mut m = c;
            for (i, &e) in t.exps.iter().enumerate() {
                if e > 0 {
                    m = f.mul(m, f.pow(v[i], e as u64));
                }
            }
            acc = f.add(acc, m);
        }
        acc
    }
}

fn parse_poly(text: &str) -> std::result::Result<Polynomial, String> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty".into());
    }
    let mut i = 0;
    let mut terms = Vec::new();
    let read_int = |i: &mut usize| -> Option<i64> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        if *i == start {
            None
        } else {
            s[start..*i].iter().collect::<String>().parse().ok()
        }
    };
    while i < s.len() {
        let mut sign = 1;
        if s[i] == '+' || s[i] == '-' {
            if s[i] == '-' {
                sign = -1;
            }
            i += 1;
        } else if !terms.is_empty() {
            return Err(format!("expected + or - at {i}"));
        }
        let mut coef = read_int(&mut i).unwrap_or(1);
        let mut exps = [0u32; 3];
        let mut saw_factor = coef != 1 || (i > 0 && s[i - 1].is_ascii_digit());
        loop {
            if i < s.len() && s[i] == '*' {
                i += 1;
            }
            if i >= s.len() {
                break;
            }
            let var = match s[i] {
                'x' => 0,
                'y' => 1,
                'z' => 2,
                c if c.is_ascii_digit() => {
                    coef *= read_int(&mut i).unwrap();
                    saw_factor = true;
                    continue;
                }
                _ => break,
            };
            i += 1;
            let mut e = 1;
            if i < s.len() && s[i] == '^' {
                i += 1;
                e = read_int(&mut i).ok_or("exponent expected")? as u32;
            }
            exps[var] += e;
            saw_factor = true;
        }
        if !saw_factor {
            return Err(format!("empty term at {i}"));
        }
        terms.push(Term { coef: sign * coef, exps });
    }
    Ok(Polynomial { terms })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveForm {
    /// `lhs(x, y) = rhs(x, y)` plus a declared number of points at infinity
    /// over every extension.
    Affine { equation: Polynomial, infinity: u64 },
    /// Homogeneous `F(x, y, z) = 0`, counted on the projective plane.
    Projective { poly: Polynomial },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCurve {
    pub base: FiniteField,
    pub form: CurveForm,
    pub genus_hint: Option<u32>,
}

impl PlaneCurve {
    pub fn affine(base: FiniteField, lhs: &str, rhs: &str, infinity: u64) -> Result<Self> {
        let eq = Polynomial::parse(lhs)?.minus(&Polynomial::parse(rhs)?);
        Self::build(base, CurveForm::Affine { equation: eq, infinity }, None)
    }

    pub fn projective(base: FiniteField, poly: &str) -> Result<Self> {
        Self::build(base, CurveForm::Projective { poly: Polynomial::parse(poly)? }, None)
    }

    fn build(base: FiniteField, form: CurveForm, genus_hint: Option<u32>) -> Result<Self> {
        let p = base.p();
        let form = match form {
            CurveForm::Affine { equation, infinity } => {
                if equation.uses_z() {
                    return Err(Error::Invalid("affine equations use only x and y".into()));
                }
                CurveForm::Affine { equation: equation.reduced(p), infinity }
            }
            CurveForm::Projective { poly } => {
                if !poly.is_homogeneous() {
                    return Err(Error::Invalid("projective polynomial must be homogeneous".into()));
                }
                CurveForm::Projective { poly: poly.reduced(p) }
            }
        };
        let poly = match &form {
            CurveForm::Affine { equation, .. } => equation,
            CurveForm::Projective { poly } => poly,
        };
        if poly.terms.is_empty() {
            return Err(Error::Invalid("curve polynomial vanishes identically".into()));
        }
        Ok(Self { base, form, genus_hint })
    }

    pub fn with_genus_hint(mut self, g: u32) -> Self {
        self.genus_hint = Some(g);
        self
    }

    /// `q` of the base field.
    pub fn q(&self) -> u64 {
        self.base.q() as u64
    }

    /// Number of points over `F_{q^n}`.
    pub fn count_points(&self, n: u32) -> Result<u64> {
        if n == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let k = self.base.k() * n;
        let qn = (self.base.p() as u64).checked_pow(k).unwrap_or(u64::MAX);
        if qn > ENUMERATION_BOUND {
            return Err(Error::Bound(format!(
                "q^{n} = {qn} exceeds {ENUMERATION_BOUND}; count over a smaller extension"
            )));
        }
        let f = FiniteField::new(self.base.p() as u64, k)?;
        let poly = match &self.form {
            CurveForm::Affine { equation, .. } => equation,
            CurveForm::Projective { poly } => poly,
        };
        let coefs: Vec<u32> = poly.terms.iter().map(|t| f.from_int(t.coef)).collect();
        let q = f.q();
        let affine = (0..q)
            .into_par_iter()
            .map(|x| (0..q).filter(|&y| poly.eval(&f, &coefs, [x, y, 1]) == 0).count() as u64)
            .sum::<u64>();
        match &self.form {
            CurveForm::Affine { infinity, .. } => Ok(affine + infinity),
            CurveForm::Projective { .. } => {
                // (x : 1 : 0) and (1 : 0 : 0)
                let line = (0..q).filter(|&x| poly.eval(&f, &coefs, [x, 1, 0]) == 0).count() as u64;
                let corner = u64::from(poly.eval(&f, &coefs, [1, 0, 0]) == 0);
                Ok(affine + line + corner)
            }
        }
    }
}

/// Parses the curve text format:
///
/// ```text
/// field 3 1
/// affine y^2 = x^3 + x
/// infinity 1
/// genus 1
/// ```
///
/// or `projective <homogeneous polynomial>` in place of the affine lines.
pub fn parse_curve(text: &str, source: &Path) -> Result<PlaneCurve> {
    let err = |line: usize, msg: String| Error::Parse {
        path: source.to_path_buf(),
        line,
        msg,
    };
    let mut field: Option<FiniteField> = None;
    let mut affine: Option<(usize, Polynomial)> = None;
    let mut projective: Option<(usize, Polynomial)> = None;
    let mut infinity: Option<u64> = None;
    let mut genus: Option<u32> = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "field" => {
                let nums: Vec<&str> = rest.split_whitespace().collect();
                let parsed = match nums.as_slice() {
                    [p, k] => p.parse::<u64>().ok().zip(k.parse::<u32>().ok()),
                    _ => None,
                };
                let (p, k) = parsed.ok_or_else(|| err(line_no, "expected `field <p> <k>`".into()))?;
                field = Some(FiniteField::new(p, k).map_err(|e| err(line_no, e.to_string()))?);
            }
            "affine" => {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| err(line_no, "affine equation needs `=`".into()))?;
                let eq = Polynomial::parse(lhs)
                    .and_then(|l| Ok(l.minus(&Polynomial::parse(rhs)?)))
                    .map_err(|e| err(line_no, e.to_string()))?;
                affine = Some((line_no, eq));
            }
            "projective" => {
                let body = rest.strip_suffix("= 0").unwrap_or(rest);
                let poly = Polynomial::parse(body).map_err(|e| err(line_no, e.to_string()))?;
                projective = Some((line_no, poly));
            }
            "infinity" => {
                infinity = Some(rest.parse().map_err(|_| err(line_no, format!("bad count {rest:?}")))?);
            }
            "genus" => {
                genus = Some(rest.parse().map_err(|_| err(line_no, format!("bad genus {rest:?}")))?);
            }
            other => return Err(err(line_no, format!("unknown directive {other:?}"))),
        }
    }
    let last = text.lines().count().max(1);
    let base = field.ok_or_else(|| err(last, "missing `field` line".into()))?;
    let (line_no, form) = match (affine, projective) {
        (Some((l, equation)), None) => {
            let infinity = infinity.ok_or_else(|| err(l, "affine curves need an `infinity` line".into()))?;
            (l, CurveForm::Affine { equation, infinity })
        }
        (None, Some((l, poly))) => (l, CurveForm::Projective { poly }),
        _ => return Err(err(last, "need exactly one of `affine` or `projective`".into())),
    };
    PlaneCurve::build(base, form, genus).map_err(|e| err(line_no, e.to_string()))
}

pub fn load_curve(path: impl AsRef<Path>) -> Result<PlaneCurve> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        msg: e.to_string(),
    })?;
    parse_curve(&text, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_polynomials() {
        let p = Polynomial::parse("x^3 + 2 x y - y^2*z + 7").unwrap();
        assert_eq!(p.terms.len(), 4);
        assert_eq!(p.terms[1], Term { coef: 2, exps: [1, 1, 0] });
        assert_eq!(p.terms[2], Term { coef: -1, exps: [0, 2, 1] });
        assert_eq!(p.terms[3], Term { coef: 7, exps: [0, 0, 0] });
        assert!(Polynomial::parse("x^").is_err());
        assert!(Polynomial::parse("x + + y").is_err());
        assert!(Polynomial::parse("").is_err());
    }

    #[test]
    fn projective_line_counts() {
        let f = FiniteField::new(3, 1).unwrap();
        let c = PlaneCurve::projective(f, "z").unwrap();
        for n in 1..=4 {
            assert_eq!(c.count_points(n).unwrap(), 3u64.pow(n) + 1);
        }
    }

    #[test]
    fn elliptic_counts() {
        let c = PlaneCurve::affine(FiniteField::new(3, 1).unwrap(), "y^2", "x^3 + x", 1).unwrap();
        assert_eq!(c.count_points(1).unwrap(), 4);
        let c = PlaneCurve::affine(FiniteField::new(5, 1).unwrap(), "y^2", "x^3 + x", 1).unwrap();
        assert_eq!(c.count_points(1).unwrap(), 4);
        // the same curve written projectively
        let c = PlaneCurve::projective(FiniteField::new(5, 1).unwrap(), "y^2 z - x^3 - x z^2").unwrap();
        assert_eq!(c.count_points(1).unwrap(), 4);
        assert_eq!(c.count_points(2).unwrap(), 32);
    }

    #[test]
    fn counts_over_nonprime_base() {
        // y^2 = x^3 + x over F_9 has as many points as the F_3 curve over F_9
        let small = PlaneCurve::affine(FiniteField::new(3, 1).unwrap(), "y^2", "x^3 + x", 1).unwrap();
        let big = PlaneCurve::affine(FiniteField::new(3, 2).unwrap(), "y^2", "x^3 + x", 1).unwrap();
        assert_eq!(big.count_points(1).unwrap(), small.count_points(2).unwrap());
        assert_eq!(big.count_points(2).unwrap(), small.count_points(4).unwrap());
        assert!(matches!(big.count_points(5), Err(Error::Bound(_))));
    }

    #[test]
    fn parse_files() {
        let c = parse_curve("field 3 1\naffine y^2 = x^3 + x\ninfinity 1\ngenus 1\n", Path::new("e")).unwrap();
        assert_eq!(c.genus_hint, Some(1));
        assert!(matches!(c.form, CurveForm::Affine { infinity: 1, .. }));
        let c = parse_curve("# line\nfield 3 1\nprojective z\n", Path::new("p")).unwrap();
        assert!(matches!(c.form, CurveForm::Projective { .. }));
        match parse_curve("field 3 1\nprojective x^2 + y\n", Path::new("bad")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(parse_curve("field 4 1\nprojective z\n", Path::new("x")).is_err());
        assert!(parse_curve("field 3 1\naffine y^2 = x^3\n", Path::new("x")).is_err());
        assert!(parse_curve("field 3 1\nbogus\n", Path::new("x")).is_err());
    }
}
