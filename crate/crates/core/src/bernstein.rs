//! Exact bivariate polynomials, their Bernstein forms on rectangles, and
//! subdivision certificates for upper bounds.
//!
//! On the unit square a polynomial of bidegree `(M, N)` is a convex
//! combination of its Bernstein coefficients, so their min and max enclose
//! its range. Certification splits rectangles until every piece has its
//! largest coefficient under the bound. Near a point where the bound is
//! attained that can never succeed, and [`corner_certificate`] closes the
//! gap with a quadratic lower bound instead.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{BernsteinError, ParseError};
use crate::json::{rat_from_json, rat_to_json};
use crate::scalar::{fmt_rat, parse_rat, rat, Rat};

/// `Σ coeffs[i][j] p^i x^j` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariatePoly {
    coeffs: Vec<Vec<Rat>>,
}

impl BivariatePoly {
    pub fn zero(m: usize, n: usize) -> Self {
        Self {
            coeffs: vec![vec![Rat::zero(); n + 1]; m + 1],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self {
            coeffs: vec![vec![c]],
        }
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(rat(c, 1))
    }

    /// `c · p^i x^j`.
    pub fn monomial(c: Rat, i: usize, j: usize) -> Self {
        let mut out = Self::zero(i, j);
        out.coeffs[i][j] = c;
        out
    }

    /// The first variable, `p`.
    pub fn p() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    /// The second variable, `x`.
    pub fn x() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    /// Builds from `(i, j, coefficient)` triples; repeated exponents add up.
    pub fn from_terms(m: usize, n: usize, terms: impl IntoIterator<Item = (usize, usize, Rat)>) -> Self {
        let mut out = Self::zero(m, n);
        for (i, j, c) in terms {
            out.grow(i, j);
            out.coeffs[i][j] += c;
        }
        out
    }

    /// Builds from integer rows: `rows[i][j]` is the coefficient of `p^i x^j`.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let n = rows.iter().map(|r| r.len()).max().unwrap_or(1).max(1) - 1;
        let mut out = Self::zero(rows.len().max(1) - 1, n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                out.coeffs[i][j] = rat(c, 1);
            }
        }
        out
    }

    fn grow(&mut self, m: usize, n: usize) {
        let width = self.coeffs[0].len().max(n + 1);
        while self.coeffs.len() <= m {
            self.coeffs.push(Vec::new());
        }
        for row in &mut self.coeffs {
            row.resize(width, Rat::zero());
        }
    }

    /// Stored bidegree; may exceed [`Self::degree`] when top terms vanish.
    pub fn bidegree(&self) -> (usize, usize) {
        (self.coeffs.len() - 1, self.coeffs[0].len() - 1)
    }

    /// Smallest bidegree holding every nonzero coefficient.
    pub fn degree(&self) -> (usize, usize) {
        let mut m = 0;
        let mut n = 0;
        for (i, j, _) in self.terms() {
            m = m.max(i);
            n = n.max(j);
        }
        (m, n)
    }

    pub fn trimmed(&self) -> Self {
        let (m, n) = self.degree();
        Self {
            coeffs: self.coeffs[..=m].iter().map(|r| r[..=n].to_vec()).collect(),
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rat {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    /// Nonzero terms as `(i, j, coefficient)`, row-major.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(move |(j, c)| (i, j, c))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.terms().next().is_none()
    }

    pub fn eval(&self, p: &Rat, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for row in self.coeffs.iter().rev() {
            let mut inner = Rat::zero();
            for c in row.iter().rev() {
                inner = inner * x + c;
            }
            acc = acc * p + inner;
        }
        acc
    }

    pub fn eval_f64(&self, p: f64, x: f64) -> f64 {
        let mut acc = 0.0;
        for row in self.coeffs.iter().rev() {
            let mut inner = 0.0;
            for c in row.iter().rev() {
                inner = inner * x + crate::scalar::rat_to_f64(c);
            }
            acc = acc * p + inner;
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let (m1, n1) = self.bidegree();
        let (m2, n2) = other.bidegree();
        let mut out = Self::zero(m1.max(m2), n1.max(n2));
        for src in [self, other] {
            for (i, row) in src.coeffs.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    out.coeffs[i][j] += c;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|r| r.iter().map(|v| v * c).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (m1, n1) = self.bidegree();
        let (m2, n2) = other.bidegree();
        let mut out = Self::zero(m1 + m2, n1 + n2);
        for (i1, j1, a) in self.terms() {
            for (i2, j2, b) in other.terms() {
                out.coeffs[i1 + i2][j1 + j2] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::from_int(1), |acc, _| acc.mul(self))
    }

    /// Sum of `|coefficient|` grouped by total degree `i + j`.
    pub fn abs_sums_by_total_degree(&self) -> BTreeMap<usize, Rat> {
        let mut sums = BTreeMap::new();
        for (i, j, c) in self.terms() {
            *sums.entry(i + j).or_insert_with(Rat::zero) += c.abs();
        }
        sums
    }

    /// Terms of total degree `d` only.
    pub fn homogeneous_part(&self, d: usize) -> Self {
        let (m, n) = self.bidegree();
        Self::from_terms(
            m,
            n,
            self.terms()
                .filter(|(i, j, _)| i + j == d)
                .map(|(i, j, c)| (i, j, c.clone())),
        )
    }

    /// `q(u, v) = poly(a + (b−a)u, c + (d−c)v)`, same stored bidegree.
    pub fn affine_restrict(&self, rect: &Rectangle) -> Self {
        let (m, n) = self.bidegree();
        let pu = shift_scale_powers(&rect.a, &(&rect.b - &rect.a), m);
        let xv = shift_scale_powers(&rect.c, &(&rect.d - &rect.c), n);
        let mut out = Self::zero(m, n);
        for (i, j, coef) in self.terms() {
            for (k, pk) in pu[i].iter().enumerate() {
                if pk.is_zero() {
                    continue;
                }
                let t = coef * pk;
                for (l, xl) in xv[j].iter().enumerate() {
                    if !xl.is_zero() {
                        out.coeffs[k][l] += &t * xl;
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let (m, n) = self.bidegree();
        let terms: Vec<Value> = self
            .terms()
            .map(|(i, j, c)| {
                let mut t = rat_to_json(c);
                t["i"] = json!(i);
                t["j"] = json!(j);
                t.as_object_mut().map(|o| o.remove("decimal"));
                t
            })
            .collect();
        json!({ "bidegree": [m, n], "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Self, ParseError> {
        let shape = |msg: &str| ParseError::Shape(msg.to_string());
        let bd = v
            .get("bidegree")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 2)
            .ok_or_else(|| shape("\"bidegree\" must be [m, n]"))?;
        let m = bd[0].as_u64().ok_or_else(|| shape("bidegree entries must be integers"))? as usize;
        let n = bd[1].as_u64().ok_or_else(|| shape("bidegree entries must be integers"))? as usize;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| shape("\"terms\" must be a list"))?;
        let mut out = Self::zero(m, n);
        for t in terms {
            let i = t.get("i").and_then(Value::as_u64).ok_or_else(|| shape("term needs \"i\""))? as usize;
            let j = t.get("j").and_then(Value::as_u64).ok_or_else(|| shape("term needs \"j\""))? as usize;
            if i > m || j > n {
                return Err(ParseError::Shape(format!(
                    "term p^{i} x^{j} exceeds declared bidegree ({m},{n})"
                )));
            }
            out.coeffs[i][j] += rat_from_json(t)?;
        }
        Ok(out)
    }

    pub fn from_json_str(s: &str) -> Result<Self, ParseError> {
        Self::from_json(&serde_json::from_str(s)?)
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, j, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", fmt_rat(c))?;
            match i {
                0 => {}
                1 => f.write_str("·p")?,
                _ => write!(f, "·p^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("·x")?,
                _ => write!(f, "·x^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// `pows[i][k]` = coefficient of `u^k` in `(s + h·u)^i`.
fn shift_scale_powers(s: &Rat, h: &Rat, max: usize) -> Vec<Vec<Rat>> {
    let mut pows = vec![vec![Rat::one()]];
    for i in 1..=max {
        let prev = &pows[i - 1];
        let mut next = vec![Rat::zero(); i + 1];
        for (k, c) in prev.iter().enumerate() {
            next[k] += c * s;
            next[k + 1] += c * h;
        }
        pows.push(next);
    }
    pows
}

/// The closed rectangle `[a, b] × [c, d]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rectangle {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
    pub d: Rat,
}

impl Rectangle {
    pub fn new(a: Rat, b: Rat, c: Rat, d: Rat) -> Result<Self, BernsteinError> {
        if a >= b || c >= d {
            return Err(BernsteinError::EmptyRectangle);
        }
        Ok(Self { a, b, c, d })
    }

    pub fn unit() -> Self {
        Self {
            a: Rat::zero(),
            b: Rat::one(),
            c: Rat::zero(),
            d: Rat::one(),
        }
    }

    /// `[0, s]²`.
    pub fn corner(s: Rat) -> Self {
        Self {
            a: Rat::zero(),
            b: s.clone(),
            c: Rat::zero(),
            d: s,
        }
    }

    /// Parses `"a,b,c,d"`; each entry is any rational literal.
    pub fn parse(s: &str) -> Result<Self, ParseError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != 4 {
            return Err(ParseError::Rectangle(s.to_string()));
        }
        let v = parts
            .iter()
            .map(|p| parse_rat(p))
            .collect::<Result<Vec<_>, _>>()?;
        let [a, b, c, d]: [Rat; 4] = v.try_into().expect("four entries");
        Self::new(a, b, c, d).map_err(|_| ParseError::Rectangle(s.to_string()))
    }

    pub fn width(&self) -> Rat {
        &self.b - &self.a
    }

    pub fn height(&self) -> Rat {
        &self.d - &self.c
    }

    pub fn touches_origin(&self) -> bool {
        self.a.is_zero() && self.c.is_zero()
    }

    pub fn contains(&self, p: &Rat, x: &Rat) -> bool {
        &self.a <= p && p <= &self.b && &self.c <= x && x <= &self.d
    }

    /// Quadrants in the order lower-left, upper-left, lower-right,
    /// upper-right (first variable horizontal).
    pub fn quadrants(&self) -> [Rectangle; 4] {
        let mp = (&self.a + &self.b) / rat(2, 1);
        let mx = (&self.c + &self.d) / rat(2, 1);
        let r = |a: &Rat, b: &Rat, c: &Rat, d: &Rat| Rectangle {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            d: d.clone(),
        };
        [
            r(&self.a, &mp, &self.c, &mx),
            r(&self.a, &mp, &mx, &self.d),
            r(&mp, &self.b, &self.c, &mx),
            r(&mp, &self.b, &mx, &self.d),
        ]
    }

    /// Halves along the longer side; a tie splits the first variable.
    pub fn bisect_longest(&self) -> [Rectangle; 2] {
        if self.width() >= self.height() {
            let m = (&self.a + &self.b) / rat(2, 1);
            [
                Rectangle { b: m.clone(), ..self.clone() },
                Rectangle { a: m, ..self.clone() },
            ]
        } else {
            let m = (&self.c + &self.d) / rat(2, 1);
            [
                Rectangle { d: m.clone(), ..self.clone() },
                Rectangle { c: m, ..self.clone() },
            ]
        }
    }

    pub fn to_json(&self) -> Value {
        json!([fmt_rat(&self.a), fmt_rat(&self.b), fmt_rat(&self.c), fmt_rat(&self.d)])
    }
}

impl fmt::Display for Rectangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}] × [{}, {}]",
            fmt_rat(&self.a),
            fmt_rat(&self.b),
            fmt_rat(&self.c),
            fmt_rat(&self.d)
        )
    }
}

/// Bernstein coefficients `b[i][j]` of a polynomial over `rect`.
#[derive(Clone, Debug, PartialEq)]
pub struct BernsteinPatch {
    pub rect: Rectangle,
    pub bidegree: (usize, usize),
    pub coeffs: Vec<Vec<Rat>>,
}

fn binomial_rows(max: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=max {
        let prev = &rows[n - 1];
        let mut row = vec![BigInt::one(); n + 1];
        for k in 1..n {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

/// Power basis on the unit square to Bernstein basis of bidegree
/// `(target_m, target_n)`:
/// `b_ij = Σ_{k≤i, l≤j} C(i,k)C(j,l) / (C(M,k)C(N,l)) · a_kl`.
pub fn to_bernstein(
    poly: &BivariatePoly,
    target_m: usize,
    target_n: usize,
) -> Result<BernsteinPatch, BernsteinError> {
    let (m, n) = poly.degree();
    if target_m < m || target_n < n {
        return Err(BernsteinError::DegreeTooLow {
            m,
            n,
            target_m,
            target_n,
        });
    }
    let binom = binomial_rows(target_m.max(target_n));
    let ratio = |top: usize, k: usize, big: usize| {
        Rat::new(binom[top][k].clone(), binom[big][k].clone())
    };
    // Convert along p first, then along x.
    let mut half = vec![vec![Rat::zero(); target_n + 1]; target_m + 1];
    for (i, row) in half.iter_mut().enumerate() {
        for k in 0..=i.min(m) {
            let w = ratio(i, k, target_m);
            for l in 0..=n {
                let a = poly.coeff(k, l);
                if !a.is_zero() {
                    row[l] += &w * a;
                }
            }
        }
    }
    let mut out = vec![vec![Rat::zero(); target_n + 1]; target_m + 1];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for l in 0..=j.min(n) {
                if !half[i][l].is_zero() {
                    *cell += ratio(j, l, target_n) * &half[i][l];
                }
            }
        }
    }
    Ok(BernsteinPatch {
        rect: Rectangle::unit(),
        bidegree: (target_m, target_n),
        coeffs: out,
    })
}

/// Bernstein patch of `poly` over `rect` at bidegree `(m, n)`.
pub fn bernstein_patch(
    poly: &BivariatePoly,
    rect: &Rectangle,
    m: usize,
    n: usize,
) -> Result<BernsteinPatch, BernsteinError> {
    let mut patch = to_bernstein(&poly.affine_restrict(rect), m, n)?;
    patch.rect = rect.clone();
    Ok(patch)
}

/// `(min, max)` over the Bernstein coefficients.
pub fn bernstein_range(patch: &BernsteinPatch) -> (Rat, Rat) {
    let mut it = patch.coeffs.iter().flatten();
    let first = it.next().cloned().unwrap_or_else(Rat::zero);
    it.fold((first.clone(), first), |(lo, hi), c| {
        (if *c < lo { c.clone() } else { lo }, if *c > hi { c.clone() } else { hi })
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Split every failing rectangle into its four quadrants.
    PaperQuadrants,
    /// Halve the longer side; ties split the first variable.
    BisectLongest,
    /// The default; currently the same split rule as `BisectLongest`.
    Auto,
}

impl Strategy {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "paper-quadrants" => Some(Strategy::PaperQuadrants),
            "bisect-longest" => Some(Strategy::BisectLongest),
            "auto" => Some(Strategy::Auto),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strategy::PaperQuadrants => "paper-quadrants",
            Strategy::BisectLongest => "bisect-longest",
            Strategy::Auto => "auto",
        }
    }

    fn split(self, r: &Rectangle) -> Vec<Rectangle> {
        match self {
            Strategy::PaperQuadrants => r.quadrants().to_vec(),
            Strategy::BisectLongest | Strategy::Auto => r.bisect_longest().to_vec(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeStatus {
    CertifiedByBernstein,
    CertifiedByCorner,
    Subdivided,
    Failed,
}

impl NodeStatus {
    pub fn name(self) -> &'static str {
        match self {
            NodeStatus::CertifiedByBernstein => "certified-by-bernstein",
            NodeStatus::CertifiedByCorner => "certified-by-corner",
            NodeStatus::Subdivided => "subdivided",
            NodeStatus::Failed => "failed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProofNode {
    pub rect: Rectangle,
    pub depth: usize,
    /// Largest Bernstein coefficient over `rect`.
    pub bernstein_max: Rat,
    pub status: NodeStatus,
    /// Margin `μ` of a corner certificate attempted at this node.
    pub corner_margin: Option<Rat>,
    /// Corner of `rect` where the polynomial itself exceeds the bound.
    pub violated_at: Option<(Rat, Rat)>,
    pub children: Vec<ProofNode>,
}

impl ProofNode {
    pub fn certified(&self) -> bool {
        match self.status {
            NodeStatus::CertifiedByBernstein | NodeStatus::CertifiedByCorner => true,
            NodeStatus::Subdivided => self.children.iter().all(ProofNode::certified),
            NodeStatus::Failed => false,
        }
    }

    /// Pre-order traversal.
    pub fn walk(&self) -> Vec<&ProofNode> {
        let mut out = vec![self];
        for c in &self.children {
            out.extend(c.walk());
        }
        out
    }

    pub fn find(&self, rect: &Rectangle) -> Option<&ProofNode> {
        self.walk().into_iter().find(|n| &n.rect == rect)
    }

    pub fn leaves(&self) -> Vec<&ProofNode> {
        self.walk().into_iter().filter(|n| n.children.is_empty()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rect": self.rect.to_json(),
            "depth": self.depth,
            "status": self.status.name(),
            "bernstein_max": rat_to_json(&self.bernstein_max),
            "corner_margin": self.corner_margin.as_ref().map(rat_to_json),
            "violated_at": self.violated_at.as_ref().map(|(p, x)| json!([rat_to_json(p), rat_to_json(x)])),
            "children": self.children.iter().map(ProofNode::to_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    pub max_depth: usize,
    pub strategy: Strategy,
    /// Try [`corner_certificate`] on failing rectangles whose lower-left
    /// corner is the origin when the bound is attained there.
    pub corner_fallback: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            max_depth: 12,
            strategy: Strategy::Auto,
            corner_fallback: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CertificationReport {
    pub bound: Rat,
    pub strategy: Strategy,
    pub max_depth: usize,
    pub corner_fallback: bool,
    pub root: ProofNode,
    pub certified: bool,
}

impl CertificationReport {
    pub fn node_count(&self) -> usize {
        self.root.walk().len()
    }

    pub fn to_json(&self) -> Value {
        let leaves = self.root.leaves();
        let count = |s: NodeStatus| leaves.iter().filter(|n| n.status == s).count();
        json!({
            "bound": rat_to_json(&self.bound),
            "strategy": self.strategy.name(),
            "max_depth": self.max_depth,
            "corner_fallback": self.corner_fallback,
            "verdict": if self.certified { "certified" } else { "not-certified" },
            "nodes": self.node_count(),
            "leaves": {
                "certified_by_bernstein": count(NodeStatus::CertifiedByBernstein),
                "certified_by_corner": count(NodeStatus::CertifiedByCorner),
                "failed": count(NodeStatus::Failed),
            },
            "tree": self.root.to_json(),
        })
    }
}

/// Certifies `poly ≤ bound` on `rect` by depth-first Bernstein subdivision.
/// The Bernstein bidegree at each node is the polynomial's degree.
pub fn certify_upper_bound(
    poly: &BivariatePoly,
    rect: &Rectangle,
    bound: &Rat,
    options: &CertifyOptions,
) -> CertificationReport {
    let poly = poly.trimmed();
    let margin_poly = BivariatePoly::constant(bound.clone()).sub(&poly);
    let root = certify_node(&poly, &margin_poly, rect.clone(), 0, bound, options);
    CertificationReport {
        bound: bound.clone(),
        strategy: options.strategy,
        max_depth: options.max_depth,
        corner_fallback: options.corner_fallback,
        certified: root.certified(),
        root,
    }
}

fn certify_node(
    poly: &BivariatePoly,
    margin_poly: &BivariatePoly,
    rect: Rectangle,
    depth: usize,
    bound: &Rat,
    options: &CertifyOptions,
) -> ProofNode {
    let (m, n) = poly.degree();
    let patch = bernstein_patch(poly, &rect, m, n).expect("degree matches");
    let (_, hi) = bernstein_range(&patch);
    let mut node = ProofNode {
        rect,
        depth,
        bernstein_max: hi,
        status: NodeStatus::Failed,
        corner_margin: None,
        violated_at: None,
        children: Vec::new(),
    };
    if node.bernstein_max <= *bound {
        node.status = NodeStatus::CertifiedByBernstein;
        return node;
    }
    // Corner coefficients are exact values, so one above the bound refutes
    // it and further subdivision is pointless.
    let r = &node.rect;
    let corners = [
        (&patch.coeffs[0][0], (&r.a, &r.c)),
        (&patch.coeffs[m][0], (&r.b, &r.c)),
        (&patch.coeffs[0][n], (&r.a, &r.d)),
        (&patch.coeffs[m][n], (&r.b, &r.d)),
    ];
    if let Some((_, (p, x))) = corners.iter().find(|(v, _)| *v > bound) {
        node.violated_at = Some(((*p).clone(), (*x).clone()));
        return node;
    }
    if options.corner_fallback && node.rect.touches_origin() {
        let s = node.rect.b.clone().max(node.rect.d.clone());
        if let Ok(cert) = corner_certificate(margin_poly, &s) {
            let ok = cert.margin.is_positive();
            node.corner_margin = Some(cert.margin);
            if ok {
                node.status = NodeStatus::CertifiedByCorner;
                return node;
            }
        }
    }
    if depth < options.max_depth {
        node.status = NodeStatus::Subdivided;
        node.children = options
            .strategy
            .split(&node.rect)
            .into_iter()
            .map(|r| certify_node(poly, margin_poly, r, depth + 1, bound, options))
            .collect();
    }
    node
}

/// `K = Σ_d S_d · s^(d−2)` with `S_d` the absolute coefficient sum in
/// total degree `d`, so that `|R(p, x)| ≤ K (p² + x²)` on `[0, s]²`.
#[derive(Clone, Debug, PartialEq)]
pub struct TailBound {
    pub degree_sums: BTreeMap<usize, Rat>,
    pub constant: Rat,
}

/// Each `p^i x^j` with `i + j ≥ 3` is at most `s^(i+j−2)(p² + x²)` on
/// `[0, s]²`: factor out `p²` (if `i ≥ 2`) or `x²` (otherwise `j ≥ 2`) and
/// bound the remaining degree-`(i+j−2)` monomial by `s^(i+j−2)`.
pub fn monomial_tail_bound(r: &BivariatePoly, s: &Rat) -> Result<TailBound, BernsteinError> {
    if let Some((i, j, _)) = r.terms().find(|(i, j, _)| i + j < 3) {
        return Err(BernsteinError::LowDegreeMonomial { i, j });
    }
    let degree_sums = r.abs_sums_by_total_degree();
    let constant = degree_sums
        .iter()
        .map(|(&d, sum)| sum * num_traits::pow(s.clone(), d - 2))
        .fold(Rat::zero(), |acc, t| acc + t);
    Ok(TailBound {
        degree_sums,
        constant,
    })
}

/// Lower bound `F ≥ μ (p² + x²)` on `[0, s]²`.
#[derive(Clone, Debug, PartialEq)]
pub struct CornerCertificate {
    pub corner_size: Rat,
    /// Quadratic part `α p² + β p x + δ x²`.
    pub alpha: Rat,
    pub beta: Rat,
    pub delta: Rat,
    /// `min(α − |β|/2, δ − |β|/2)`, from `2|px| ≤ p² + x²`.
    pub quadratic_floor: Rat,
    pub tail: TailBound,
    /// `quadratic_floor − tail.constant`.
    pub margin: Rat,
}

impl CornerCertificate {
    pub fn certifies(&self) -> bool {
        self.margin.is_positive()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "corner_size": rat_to_json(&self.corner_size),
            "quadratic": {
                "alpha": rat_to_json(&self.alpha),
                "beta": rat_to_json(&self.beta),
                "delta": rat_to_json(&self.delta),
            },
            "quadratic_floor": rat_to_json(&self.quadratic_floor),
            "degree_sums": self.tail.degree_sums.iter()
                .map(|(d, s)| json!({ "degree": d, "sum": rat_to_json(s) }))
                .collect::<Vec<_>>(),
            "tail_constant": rat_to_json(&self.tail.constant),
            "margin": rat_to_json(&self.margin),
        })
    }
}

pub fn corner_certificate(f: &BivariatePoly, s: &Rat) -> Result<CornerCertificate, BernsteinError> {
    let inapplicable = |msg: String| BernsteinError::CornerInapplicable(msg);
    if !s.is_positive() {
        return Err(inapplicable("corner size must be positive".into()));
    }
    if let Some((i, j, _)) = f.terms().find(|(i, j, _)| i + j < 2) {
        return Err(inapplicable(format!("term p^{i} x^{j} of degree below 2")));
    }
    let alpha = f.coeff(2, 0);
    let beta = f.coeff(1, 1);
    let delta = f.coeff(0, 2);
    let half_beta = beta.abs() / rat(2, 1);
    let fp = &alpha - &half_beta;
    let fx = &delta - &half_beta;
    if !fp.is_positive() || !fx.is_positive() {
        return Err(inapplicable(format!(
            "quadratic part {}p² + {}px + {}x² is not dominant",
            fmt_rat(&alpha),
            fmt_rat(&beta),
            fmt_rat(&delta)
        )));
    }
    let quadratic_floor = fp.min(fx);
    let rest = f.sub(&f.homogeneous_part(2));
    let tail = monomial_tail_bound(&rest, s)?;
    let margin = &quadratic_floor - &tail.constant;
    Ok(CornerCertificate {
        corner_size: s.clone(),
        alpha,
        beta,
        delta,
        quadratic_floor,
        tail,
        margin,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rat {
        rat(n, d)
    }

    #[test]
    fn affine_restrict_examples() {
        let half = Rectangle::new(r(0, 1), r(1, 2), r(0, 1), r(1, 2)).unwrap();
        assert_eq!(
            BivariatePoly::p().affine_restrict(&half),
            BivariatePoly::monomial(r(1, 2), 1, 0)
        );
        assert_eq!(
            BivariatePoly::from_int(7).affine_restrict(&half),
            BivariatePoly::from_int(7)
        );
        let upper = Rectangle::new(r(1, 2), r(1, 1), r(0, 1), r(1, 1)).unwrap();
        let q = BivariatePoly::p().pow(2).affine_restrict(&upper);
        assert_eq!(
            q,
            BivariatePoly::from_terms(2, 0, [(0, 0, r(1, 4)), (1, 0, r(1, 2)), (2, 0, r(1, 4))])
        );
    }

    #[test]
    fn bernstein_examples() {
        let patch = to_bernstein(&BivariatePoly::p(), 1, 0).unwrap();
        assert_eq!(patch.coeffs, vec![vec![r(0, 1)], vec![r(1, 1)]]);
        let patch = to_bernstein(&BivariatePoly::p().pow(2), 3, 0).unwrap();
        assert_eq!(
            patch.coeffs,
            vec![vec![r(0, 1)], vec![r(0, 1)], vec![r(1, 3)], vec![r(1, 1)]]
        );
        let patch = to_bernstein(&BivariatePoly::from_int(7), 2, 2).unwrap();
        assert_eq!(bernstein_range(&patch), (r(7, 1), r(7, 1)));
        assert!(matches!(
            to_bernstein(&BivariatePoly::p().pow(3), 2, 0),
            Err(BernsteinError::DegreeTooLow { .. })
        ));
    }

    #[test]
    fn certify_trivial() {
        let rep = certify_upper_bound(
            &BivariatePoly::zero(0, 0),
            &Rectangle::unit(),
            &r(1, 1),
            &CertifyOptions {
                max_depth: 0,
                ..Default::default()
            },
        );
        assert!(rep.certified);
        assert_eq!(rep.root.status, NodeStatus::CertifiedByBernstein);
    }

    #[test]
    fn certify_fails_at_depth_zero_when_bound_is_tight() {
        // p(1-p) has max 1/4 but Bernstein max 1/2 at degree 2... subdivision fixes it.
        let f = BivariatePoly::p().sub(&BivariatePoly::p().pow(2));
        let opts = CertifyOptions {
            max_depth: 0,
            ..Default::default()
        };
        let rep = certify_upper_bound(&f, &Rectangle::unit(), &r(3, 10), &opts);
        assert!(!rep.certified);
        assert_eq!(rep.root.status, NodeStatus::Failed);
        let opts = CertifyOptions {
            max_depth: 6,
            ..Default::default()
        };
        assert!(certify_upper_bound(&f, &Rectangle::unit(), &r(3, 10), &opts).certified);
    }

    #[test]
    fn tail_bound_examples() {
        assert_eq!(
            monomial_tail_bound(&BivariatePoly::p().pow(3), &r(1, 4)).unwrap().constant,
            r(1, 4)
        );
        assert_eq!(
            monomial_tail_bound(&BivariatePoly::zero(2, 2), &r(1, 4)).unwrap().constant,
            r(0, 1)
        );
        assert_eq!(
            monomial_tail_bound(&BivariatePoly::x().pow(2), &r(1, 4)),
            Err(BernsteinError::LowDegreeMonomial { i: 0, j: 2 })
        );
    }

    #[test]
    fn corner_examples() {
        let f = BivariatePoly::p().pow(2).add(&BivariatePoly::x().pow(2));
        assert_eq!(corner_certificate(&f, &r(1, 4)).unwrap().margin, r(1, 1));
        let g = f.sub(&BivariatePoly::monomial(r(4, 1), 1, 1));
        assert!(matches!(
            corner_certificate(&g, &r(1, 4)),
            Err(BernsteinError::CornerInapplicable(_))
        ));
        let h = f.add(&BivariatePoly::p());
        assert!(matches!(
            corner_certificate(&h, &r(1, 4)),
            Err(BernsteinError::CornerInapplicable(_))
        ));
    }

    #[test]
    fn rectangle_parsing_and_splits() {
        let rect = Rectangle::parse("0, 1/2, 1/4, 1").unwrap();
        assert_eq!(rect.width(), r(1, 2));
        assert!(Rectangle::parse("1,0,0,1").is_err());
        assert!(Rectangle::parse("0,1,0").is_err());
        let [lo, hi] = rect.bisect_longest();
        assert_eq!(lo.d, r(5, 8));
        assert_eq!(hi.c, r(5, 8));
        let [l, _] = Rectangle::unit().bisect_longest();
        assert_eq!(l.b, r(1, 2));
        assert_eq!(l.d, r(1, 1));
    }

    #[test]
    fn poly_json_round_trip() {
        let f = BivariatePoly::from_terms(3, 2, [(0, 0, r(1, 3)), (3, 2, r(-7, 2)), (1, 1, r(5, 1))]);
        let back = BivariatePoly::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let bad = r#"{"bidegree":[1,1],"terms":[{"i":2,"j":0,"num":1,"den":1}]}"#;
        assert!(BivariatePoly::from_json_str(bad).is_err());
    }
}
