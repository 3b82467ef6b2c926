//! Weight sequences of weakly convex toric domains, the explicit ball
//! packing for prolate spheroids, and a geometric packing verifier.
//!
//! For a weakly convex region `Omega` inside the triangle `T(w0)` (the
//! smallest `{x + y <= w}` containing it), the closures of the two corner
//! components of `T(w0) \ Omega` are integral-affinely equivalent to
//! concave regions; peeling their largest inscribed triangles and
//! recursing produces the weight sequence `(w0; w1, w2, ...)`. A ball of
//! size `a` embeds into the toric domain over `Omega` exactly when the
//! triangles `T(a), T(w1), T(w2), ...` pack into `T(w0)`, so the width
//! lower bound for prolate spheroids reduces to an explicit disjoint
//! arrangement of triangles, which [`verify_packing`] checks directly.
//!
//! All triangle placements use unimodular integer linear parts, the only
//! affine maps that lift to symplectomorphisms of the toric pieces.

use crate::error::{Error, Result};
use crate::numerics::root::golden_min;
use crate::spheroid;
use crate::toric::{classify, Classification, ToricProfile};
use alloc::vec::Vec;
use core::f64::consts::PI;
#[allow(unused_imports)] // shadowed by the inherent f64 methods under cfg(test)
use num_traits::Float;

/// Weight sequence `(w0; w1 >= w2 >= ...)` of a weakly convex region.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSequence {
    /// Size of the enclosing triangle.
    pub head: f64,
    /// Sizes of the recursively peeled inscribed triangles, non-increasing.
    pub tail: Vec<f64>,
    /// Recursion cutoff the tail was computed with.
    pub depth: usize,
}

/// A triangle `T(size)` moved by an integral affine map: the image of
/// `{(x, y) : x, y >= 0, x + y <= size}` under `p -> linear p + offset`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrianglePlacement {
    pub size: f64,
    pub linear: [[i64; 2]; 2],
    pub offset: [f64; 2],
}

impl TrianglePlacement {
    /// Vertices of the placed triangle: images of `(0,0)`, `(size,0)`,
    /// `(0,size)`.
    pub fn vertices(&self) -> [[f64; 2]; 3] {
        let m = self.linear;
        let apply = |x: f64, y: f64| {
            [
                m[0][0] as f64 * x + m[0][1] as f64 * y + self.offset[0],
                m[1][0] as f64 * x + m[1][1] as f64 * y + self.offset[1],
            ]
        };
        [apply(0.0, 0.0), apply(self.size, 0.0), apply(0.0, self.size)]
    }

    fn det(&self) -> i64 {
        self.linear[0][0] * self.linear[1][1] - self.linear[0][1] * self.linear[1][0]
    }
}

/// A collection of placed triangles meant to pack into `T(container)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Packing {
    pub container: f64,
    pub pieces: Vec<TrianglePlacement>,
}

/// A single packing defect found by the verifier.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// No piece matches the announced ball size.
    MissingBall { ball: f64 },
    /// A linear part is not unimodular.
    NotUnimodular { piece: usize },
    /// A vertex of the piece leaves `T(container)`.
    OutsideContainer { piece: usize },
    /// Two piece interiors overlap beyond tolerance.
    Overlap { first: usize, second: usize },
}

impl core::fmt::Display for Violation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Violation::MissingBall { ball } => {
                write!(f, "no piece of the ball size {ball}")
            }
            Violation::NotUnimodular { piece } => {
                write!(f, "piece {piece} has non-unimodular linear part")
            }
            Violation::OutsideContainer { piece } => {
                write!(f, "piece {piece} leaves the container triangle")
            }
            Violation::Overlap { first, second } => {
                write!(f, "pieces {first} and {second} overlap")
            }
        }
    }
}

/// Verifier output: `ok` iff no violations were found.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

/// How a width lower bound was certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmbeddingMethod {
    /// Inclusion of the triangle over the inscribed simplex.
    Triangle,
    /// Weight-sequence reduction plus an explicit verified packing.
    Packing,
    /// Inclusion of the saturated domain (boundary monotone in `c`).
    Inclusion,
}

impl EmbeddingMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            EmbeddingMethod::Triangle => "triangle",
            EmbeddingMethod::Packing => "packing",
            EmbeddingMethod::Inclusion => "inclusion",
        }
    }
}

impl core::fmt::Display for EmbeddingMethod {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A certified lower bound for the Gromov width of a spheroid bundle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingVerdict {
    pub width_lower_bound: f64,
    pub method: EmbeddingMethod,
}

// ---------------------------------------------------------------------
// integral affine frames

/// `p -> m p + t` with an integer (unimodular in practice) linear part.
#[derive(Debug, Clone, Copy)]
struct Affine {
    m: [[i64; 2]; 2],
    t: [f64; 2],
}

const IDENTITY: Affine = Affine {
    m: [[1, 0], [0, 1]],
    t: [0.0, 0.0],
};

impl Affine {
    fn apply(&self, p: [f64; 2]) -> [f64; 2] {
        [
            self.m[0][0] as f64 * p[0] + self.m[0][1] as f64 * p[1] + self.t[0],
            self.m[1][0] as f64 * p[0] + self.m[1][1] as f64 * p[1] + self.t[1],
        ]
    }

    /// `self ∘ other`.
    fn compose(&self, other: &Affine) -> Affine {
        let a = self.m;
        let b = other.m;
        Affine {
            m: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
            t: self.apply(other.t),
        }
    }

    fn placement(&self, size: f64) -> TrianglePlacement {
        TrianglePlacement {
            size,
            linear: self.m,
            offset: self.t,
        }
    }
}

// ---------------------------------------------------------------------
// concave peeling

/// A concave region in normalized position: bounded by the axes and a
/// polyline running from `(ax, 0)` to `(0, by)`, together with the map
/// back to the ambient frame.
struct ConcaveRegion {
    poly: Vec<[f64; 2]>,
    place: Affine,
    side: u8,
}

/// Minimum of `x + y` over the polyline, refined by a parabola through the
/// argmin's neighbors; returns `(index, value)`.
fn min_sum(poly: &[[f64; 2]]) -> (usize, f64) {
    let mut idx = 0usize;
    let mut best = f64::INFINITY;
    for (i, p) in poly.iter().enumerate() {
        let s = p[0] + p[1];
        if s < best {
            best = s;
            idx = i;
        }
    }
    if idx > 0 && idx + 1 < poly.len() {
        let f0 = poly[idx - 1][0] + poly[idx - 1][1];
        let f1 = best;
        let f2 = poly[idx + 1][0] + poly[idx + 1][1];
        let denom = f0 - 2.0 * f1 + f2;
        if denom > 0.0 {
            let delta = 0.5 * (f0 - f2) / denom;
            if delta.abs() <= 1.0 {
                best = f1 - 0.25 * (f0 - f2) * delta;
            }
        }
    }
    (idx, best)
}

/// Peels inscribed triangles off a concave region, recursing into the at
/// most two remaining corner components, down to `levels` rounds or until
/// pieces fall below `floor`.
fn peel(region: ConcaveRegion, levels: usize, floor: f64, out: &mut Vec<(f64, u8, Affine)>) {
    if levels == 0 || region.poly.len() < 2 {
        return;
    }
    let (idx, w) = min_sum(&region.poly);
    if w <= floor {
        return;
    }
    out.push((w, region.side, region.place));

    // component at the x-axis side: translate by (-w, 0), shear the
    // hypotenuse onto the y-axis with ((1,1),(0,1))
    if idx > 0 {
        let sub: Vec<[f64; 2]> = region.poly[..=idx]
            .iter()
            .map(|p| [p[0] - w + p[1], p[1]])
            .collect();
        if sub[0][0] > floor {
            let frame = Affine {
                m: [[1, -1], [0, 1]],
                t: [w, 0.0],
            };
            peel(
                ConcaveRegion {
                    poly: sub,
                    place: region.place.compose(&frame),
                    side: region.side,
                },
                levels - 1,
                floor,
                out,
            );
        }
    }
    // component at the y-axis side: translate by (0, -w), shear the
    // hypotenuse onto the x-axis with ((1,0),(1,1))
    if idx + 1 < region.poly.len() {
        let sub: Vec<[f64; 2]> = region.poly[idx..]
            .iter()
            .map(|p| [p[0], p[0] + p[1] - w])
            .collect();
        if sub.last().unwrap()[1] > floor {
            let frame = Affine {
                m: [[1, 0], [-1, 1]],
                t: [0.0, w],
            };
            peel(
                ConcaveRegion {
                    poly: sub,
                    place: region.place.compose(&frame),
                    side: region.side,
                },
                levels - 1,
                floor,
                out,
            );
        }
    }
}

/// Splits a weakly convex boundary into its two corner remainders and
/// returns the emitted weights with their frame placements, `w0` first.
type TaggedWeights = Vec<(f64, u8, Affine)>;

fn expand_weights(t: &ToricProfile, depth: usize) -> Result<(f64, TaggedWeights)> {
    if classify(t)? != Classification::WeaklyConvex {
        return Err(Error::Domain {
            op: "weight_sequence",
            msg: "region is not weakly convex",
        });
    }
    let pts: Vec<[f64; 2]> = t.samples.iter().map(|s| [s.rho1, s.rho2]).collect();
    let mut idx = 0usize;
    let mut w0 = f64::NEG_INFINITY;
    for (i, p) in pts.iter().enumerate() {
        let s = p[0] + p[1];
        if s > w0 {
            w0 = s;
            idx = i;
        }
    }
    // parabolic refinement of the enclosing size
    if idx > 0 && idx + 1 < pts.len() {
        let f0 = pts[idx - 1][0] + pts[idx - 1][1];
        let f1 = w0;
        let f2 = pts[idx + 1][0] + pts[idx + 1][1];
        let denom = f0 - 2.0 * f1 + f2;
        if denom < 0.0 {
            let delta = 0.5 * (f0 - f2) / denom;
            if delta.abs() <= 1.0 {
                w0 = f1 - 0.25 * (f0 - f2) * delta;
            }
        }
    }
    let floor = 1e-9 * w0;
    let mut out = Vec::new();

    // corner component containing (w0, 0): curve from the x-intercept up
    // to the tangency, mapped by p -> ((0,1),(-1,-1)) (p - (w0, 0))
    if idx > 0 {
        let mut sub: Vec<[f64; 2]> = region_one_points(&pts[..=idx], w0);
        sub.reverse(); // x-axis end first
        let frame = Affine {
            m: [[-1, -1], [1, 0]],
            t: [w0, 0.0],
        };
        peel(
            ConcaveRegion {
                poly: sub,
                place: frame,
                side: 0,
            },
            depth,
            floor,
            &mut out,
        );
    }
    // corner component containing (0, w0)
    if idx + 1 < pts.len() {
        let sub: Vec<[f64; 2]> = pts[idx..]
            .iter()
            .map(|p| [p[0], w0 - p[0] - p[1]])
            .collect();
        let frame = Affine {
            m: [[1, 0], [-1, -1]],
            t: [0.0, w0],
        };
        peel(
            ConcaveRegion {
                poly: sub,
                place: frame,
                side: 1,
            },
            depth,
            floor,
            &mut out,
        );
    }
    Ok((w0, out))
}

fn region_one_points(pts: &[[f64; 2]], w0: f64) -> Vec<[f64; 2]> {
    pts.iter().map(|p| [p[1], w0 - p[0] - p[1]]).collect()
}

/// Weight sequence of a weakly convex sampled region, tail sorted
/// non-increasing with ties broken first-corner-first.
pub fn weight_sequence(t: &ToricProfile, depth: usize) -> Result<WeightSequence> {
    let (w0, mut weights) = expand_weights(t, depth)?;
    weights.sort_by(|a, b| {
        b.0.partial_cmp(&a.0)
            .unwrap()
            .then_with(|| a.1.cmp(&b.1))
    });
    Ok(WeightSequence {
        head: w0,
        tail: weights.into_iter().map(|(w, _, _)| w).collect(),
        depth,
    })
}

// ---------------------------------------------------------------------
// the explicit prolate packing

const PACKING_DEPTH: usize = 6;
const PACKING_SAMPLES: usize = 1025;

/// Builds the explicit packing certifying `B^4(beta(c))` into the toric
/// domain of a prolate spheroid, `1 < c <= c0`.
///
/// Pieces, inside the container `T(2 beta)`:
/// - the ball triangle `T(beta)` sheared onto `(0,0), (beta,0), (beta,beta)`;
/// - the two first weights `T(beta)` left in place in their corners;
/// - the second weights `T(beta - 2 pi)`: the `(0, w0)`-corner copy left in
///   place, the other moved to the triangle
///   `(beta,beta), (4 pi - beta, 2 pi), (2 pi, 2 pi)`;
/// - all deeper weights of the `(0, w0)` corner left in place, and the
///   deeper weights of the other corner rotated into the wedge
///   `(0,0), (0, 2 pi), (beta - 2 pi, 2 pi)` freed next to the axis
///   (their remainder region has chord hull exactly that wedge).
pub fn build_prolate_packing(c: f64) -> Result<Packing> {
    let c0 = spheroid::c0();
    if !(c > 1.0 && c <= c0 * (1.0 + 1e-12)) {
        return Err(Error::Domain {
            op: "build_prolate_packing",
            msg: "requires 1 < c <= c0",
        });
    }
    let beta = spheroid::beta(c);
    let w0 = 2.0 * beta;
    let w3 = beta - 2.0 * PI;
    let floor = 1e-9 * w0;
    let mut pieces = Vec::new();

    // ball triangle
    pieces.push(TrianglePlacement {
        size: beta,
        linear: [[1, 1], [0, 1]],
        offset: [0.0, 0.0],
    });
    // first weights, in place
    pieces.push(TrianglePlacement {
        size: beta,
        linear: [[-1, -1], [1, 0]],
        offset: [w0, 0.0],
    });
    pieces.push(TrianglePlacement {
        size: beta,
        linear: [[1, 0], [-1, -1]],
        offset: [0.0, w0],
    });

    if w3 > floor {
        // second weight of the (w0, 0) corner, moved next to the diagonal
        pieces.push(TrianglePlacement {
            size: w3,
            linear: [[-2, -1], [-1, -1]],
            offset: [beta, beta],
        });
        // its mirror copy, left in place
        pieces.push(TrianglePlacement {
            size: w3,
            linear: [[1, 0], [0, -1]],
            offset: [0.0, beta],
        });

        // remainder of the (w0, 0) corner after the first two peels, in its
        // normalized frame: curve (2 pi (1 - s), beta - g_c(s) - 2 pi s)
        let mut poly = Vec::with_capacity(PACKING_SAMPLES);
        for i in 0..PACKING_SAMPLES {
            let s = 0.5 * (1.0 - (PI * i as f64 / (PACKING_SAMPLES - 1) as f64).cos());
            let g = spheroid::g(c, s);
            poly.push([2.0 * PI * (1.0 - s), beta - g - 2.0 * PI * s]);
        }
        let mut deep = Vec::new();
        peel(
            ConcaveRegion {
                poly,
                place: IDENTITY,
                side: 0,
            },
            PACKING_DEPTH.saturating_sub(2),
            floor,
            &mut deep,
        );
        // relocation of the remainder into the wedge at the axis, and the
        // mirrored natural placements on the other side
        let relocate = Affine {
            m: [[0, 1], [-1, 0]],
            t: [0.0, 2.0 * PI],
        };
        let natural = Affine {
            m: [[0, -1], [1, -1]],
            t: [beta, w3],
        };
        let mirror = Affine {
            m: [[0, 1], [1, 0]],
            t: [0.0, 0.0],
        };
        let mirrored_natural = mirror.compose(&natural);
        for (w, _, place) in deep {
            pieces.push(relocate.compose(&place).placement(w));
            pieces.push(mirrored_natural.compose(&place).placement(w));
        }
    }

    Ok(Packing {
        container: w0,
        pieces,
    })
}

// ---------------------------------------------------------------------
// verifier

/// Separating-axis test: do the interiors of two triangles intersect
/// beyond `eps`? Touching along edges or vertices is allowed.
fn triangles_overlap(a: &[[f64; 2]; 3], b: &[[f64; 2]; 3], eps: f64) -> bool {
    let mut axes = [[0.0f64; 2]; 6];
    for i in 0..3 {
        let (p, q) = (a[i], a[(i + 1) % 3]);
        axes[i] = [q[1] - p[1], p[0] - q[0]];
        let (p, q) = (b[i], b[(i + 1) % 3]);
        axes[3 + i] = [q[1] - p[1], p[0] - q[0]];
    }
    for axis in axes {
        let norm = (axis[0] * axis[0] + axis[1] * axis[1]).sqrt();
        if norm == 0.0 {
            continue;
        }
        let project = |t: &[[f64; 2]; 3]| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for v in t {
                let d = (v[0] * axis[0] + v[1] * axis[1]) / norm;
                lo = lo.min(d);
                hi = hi.max(d);
            }
            (lo, hi)
        };
        let (alo, ahi) = project(a);
        let (blo, bhi) = project(b);
        if ahi <= blo + eps || bhi <= alo + eps {
            return false;
        }
    }
    true
}

/// Checks a packing: a piece of the announced ball size exists, every
/// linear part is unimodular, every piece lies in `T(container)`, and all
/// piece interiors are pairwise disjoint (tolerance band 1e-9 of the
/// container scale counts as touching). Violations are collected, not
/// thrown.
pub fn verify_packing(p: &Packing, ball: f64) -> PackingReport {
    let eps = 1e-9 * p.container.max(1.0);
    let mut violations = Vec::new();
    if !p
        .pieces
        .iter()
        .any(|piece| (piece.size - ball).abs() <= eps)
    {
        violations.push(Violation::MissingBall { ball });
    }
    let verts: Vec<[[f64; 2]; 3]> = p.pieces.iter().map(|t| t.vertices()).collect();
    for (i, piece) in p.pieces.iter().enumerate() {
        if piece.det().abs() != 1 {
            violations.push(Violation::NotUnimodular { piece: i });
        }
        for v in &verts[i] {
            if v[0] < -eps || v[1] < -eps || v[0] + v[1] > p.container + eps {
                violations.push(Violation::OutsideContainer { piece: i });
                break;
            }
        }
    }
    for i in 0..p.pieces.len() {
        if p.pieces[i].size <= eps {
            continue;
        }
        for j in (i + 1)..p.pieces.len() {
            if p.pieces[j].size <= eps {
                continue;
            }
            if triangles_overlap(&verts[i], &verts[j], eps) {
                violations.push(Violation::Overlap { first: i, second: j });
            }
        }
    }
    PackingReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Lower bound for the Gromov width of the spheroid bundle, certified by
/// the construction appropriate to the regime: inscribed triangle for
/// `c <= 1`, verified weight-sequence packing for `1 < c <= c0`, and
/// inclusion of the `c0` domain (using monotonicity of the boundary in
/// `c`) beyond.
pub fn ball_embedding_verdict(c: f64) -> Result<EmbeddingVerdict> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::Domain {
            op: "ball_embedding_verdict",
            msg: "requires c > 0",
        });
    }
    let c0 = spheroid::c0();
    if c <= 1.0 {
        let f = |j: f64| 2.0 * spheroid::g(c, j) + 2.0 * PI * j;
        let (_, v) = golden_min(f, 0.0, 1.0, 1e-12);
        let bound = v.min(f(0.0)).min(f(1.0));
        return Ok(EmbeddingVerdict {
            width_lower_bound: bound,
            method: EmbeddingMethod::Triangle,
        });
    }
    if c <= c0 {
        let packing = build_prolate_packing(c)?;
        let ball = spheroid::beta(c);
        let report = verify_packing(&packing, ball);
        if !report.ok {
            return Err(Error::Inconsistency("prolate packing failed verification"));
        }
        return Ok(EmbeddingVerdict {
            width_lower_bound: ball,
            method: EmbeddingMethod::Packing,
        });
    }
    // domain inclusion: the boundary function increases with c
    for i in 0..=16 {
        let j = i as f64 / 16.0;
        if spheroid::g(c, j) < spheroid::g(c0, j) - 1e-9 {
            return Err(Error::Inconsistency(
                "boundary is not monotone in the spheroid parameter",
            ));
        }
    }
    Ok(EmbeddingVerdict {
        width_lower_bound: 4.0 * PI,
        method: EmbeddingMethod::Inclusion,
    })
}
