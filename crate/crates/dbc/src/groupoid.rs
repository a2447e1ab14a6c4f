//! Groupoid structures on double Bruhat cells: G^{v̄,v̄} over the Bruhat
//! cell BvB/B, the ambient action groupoid (G/B) × B_-, the embeddings
//! I_v̄ and J_v̄ relating them, the twist map G^{u,v} → G^{v,u}, and the
//! commuting left/right actions of G^{ū,ū} and G^{v̄,v̄} on G^{u,v}.
//!
//! For g = c·b = b_-·c′ in G^{v,v}: source θ(g) = c·B, target τ(g) = c′·B,
//! inverse ι(g) = c′b⁻¹ = b_-⁻¹c, identity bisection ε(c·B) = c, and
//! μ(g, h) = c·b·b′ = b_-·b_-′·c″ when τ(g) = θ(h), i.e. h = c′b′ = b_-′c″.

use crate::cells::{flag_in_cell, peel_coords, CellPoint, FlagPoint};
use crate::error::{DbcError, Result};
use crate::num::{CMat, Tolerance};
use crate::weyl::{WeylElement, WeylRep};

/// An element of the groupoid G^{v̄,v̄} ⇉ BvB/B: a cell point with u = v and
/// its source/target flags cached.
#[derive(Clone, Debug)]
pub struct GroupoidElement {
    pub pt: CellPoint,
    pub source: FlagPoint,
    pub target: FlagPoint,
}

impl GroupoidElement {
    pub fn new(pt: CellPoint) -> Result<GroupoidElement> {
        if pt.u != pt.v {
            return Err(DbcError::Factorization(
                "groupoid elements live in cells with u = v".into(),
            ));
        }
        let source = pt.flag_left()?;
        let target = pt.flag_right()?;
        Ok(GroupoidElement { pt, source, target })
    }

    pub fn from_matrix(g: CMat, v: &WeylElement, rep: &WeylRep, tol: &Tolerance) -> Result<Self> {
        let pt = CellPoint::with_reps(g, v.clone(), v.clone(), rep.clone(), rep.clone(), tol)?;
        GroupoidElement::new(pt)
    }

    pub fn theta(&self) -> &FlagPoint {
        &self.source
    }

    pub fn tau(&self) -> &FlagPoint {
        &self.target
    }

    /// Groupoid inverse ι(g) = c′·b⁻¹ = b_-⁻¹·c; both routes are computed
    /// and must agree.
    pub fn inverse(&self, tol: &Tolerance) -> Result<GroupoidElement> {
        let p = &self.pt;
        let route1 = p.c_prime.mul(&p.b.inverse()?);
        let route2 = p.b_minus.inverse()?.mul(&p.c);
        if !route1.approx_eq(&route2, 1e-6) {
            return Err(DbcError::Factorization(
                "inverse routes disagree beyond tolerance".into(),
            ));
        }
        GroupoidElement::from_matrix(route1, &p.v, &p.vrep, tol)
    }

    /// Identity bisection at this element's source flag.
    pub fn identity_at_source(&self, tol: &Tolerance) -> Result<GroupoidElement> {
        GroupoidElement::from_matrix(self.pt.c.clone(), &self.pt.v, &self.pt.vrep, tol)
    }
}

/// Identity bisection ε: the slice representative of a flag point, seen as
/// a groupoid element.
pub fn identity_bisection(fp: &FlagPoint, tol: &Tolerance) -> Result<GroupoidElement> {
    GroupoidElement::from_matrix(fp.matrix(), &fp.cell, &fp.rep, tol)
}

/// Groupoid product μ(g, h) = g · b′_h (equivalently b_{-,g} · h); requires
/// τ(g) = θ(h) in chart coordinates.
pub fn gpd_mul(
    g: &GroupoidElement,
    h: &GroupoidElement,
    tol: &Tolerance,
) -> Result<GroupoidElement> {
    let dev = g.target.dist(&h.source);
    if !g.target.approx_eq(&h.source, tol.tol_eq.max(1e-7)) {
        return Err(DbcError::Composability { dev });
    }
    let prod = g.pt.g.mul(&h.pt.b);
    let alt = g.pt.b_minus.mul(&h.pt.g);
    if !prod.approx_eq(&alt, 1e-6) {
        return Err(DbcError::Factorization(
            "product routes disagree beyond tolerance".into(),
        ));
    }
    GroupoidElement::from_matrix(prod, &g.pt.v, &g.pt.vrep, tol)
}

/// An element of the ambient action groupoid (G/B) × B_- ⇉ G/B, for the
/// right action (g·B)·b_- = (b_-⁻¹ g)·B.
#[derive(Clone, Debug)]
pub struct ActionGroupoidElement {
    pub flag: FlagPoint,
    pub b_minus: CMat,
}

impl ActionGroupoidElement {
    pub fn new(flag: FlagPoint, b_minus: CMat, tol: &Tolerance) -> Result<Self> {
        let det = b_minus.det();
        if (det - crate::num::cr(1.0)).norm() > 100.0 * tol.tol_det {
            return Err(DbcError::Factorization("b_- must have determinant 1".into()));
        }
        if !b_minus.is_lower_triangular(1e-9) {
            return Err(DbcError::Factorization("b_- must be lower triangular".into()));
        }
        Ok(ActionGroupoidElement { flag, b_minus })
    }

    pub fn theta(&self) -> &FlagPoint {
        &self.flag
    }

    /// Target flag τ(g·B, b_-) = (b_-⁻¹ g)·B; the cell label is recomputed,
    /// so this can leave the source's cell.
    pub fn tau(&self, tol: &Tolerance) -> Result<FlagPoint> {
        let moved = self.b_minus.inverse()?.mul(&self.flag.matrix());
        crate::cells::flag_canonical(&moved, tol)
    }

    /// Target flag when it is known to stay in `cell` (chart-stable form).
    pub fn tau_in_cell(
        &self,
        cell: &WeylElement,
        rep: &WeylRep,
        tol: &Tolerance,
    ) -> Result<FlagPoint> {
        let moved = self.b_minus.inverse()?.mul(&self.flag.matrix());
        flag_in_cell(&moved, cell, rep, tol)
    }

    pub fn inverse(&self, tol: &Tolerance) -> Result<ActionGroupoidElement> {
        let flag = self.tau(tol)?;
        ActionGroupoidElement::new(flag, self.b_minus.inverse()?, tol)
    }
}

/// Action-groupoid product: ((y, b), (y·b, b′)) ↦ (y, b·b′).
pub fn action_gpd_mul(
    a: &ActionGroupoidElement,
    b: &ActionGroupoidElement,
    tol: &Tolerance,
) -> Result<ActionGroupoidElement> {
    let ta = a.tau(tol)?;
    let dev = if ta.cell == b.flag.cell {
        ta.dist(&b.flag)
    } else {
        f64::INFINITY
    };
    if !(dev <= tol.tol_eq.max(1e-7) * 10.0) {
        return Err(DbcError::Composability { dev });
    }
    ActionGroupoidElement::new(a.flag.clone(), a.b_minus.mul(&b.b_minus), tol)
}

/// The Poisson embedding I_v̄: B_-vB_- → (G/B) × B_-, b_-c ↦ (b_-c·B, b_-).
pub fn embed_iv(p: &CellPoint, tol: &Tolerance) -> Result<ActionGroupoidElement> {
    let flag = flag_in_cell(&p.g, &p.u, &p.urep, tol)?;
    ActionGroupoidElement::new(flag, p.b_minus.clone(), tol)
}

/// J_v̄ = ι ∘ I_v̄: b_-c ↦ (c·B, b_-⁻¹).
pub fn embed_jv(p: &CellPoint, tol: &Tolerance) -> Result<ActionGroupoidElement> {
    let coords = peel_coords(&p.c_prime, &p.v, &p.vrep)?;
    let flag = FlagPoint {
        cell: p.v.clone(),
        rep: p.vrep.clone(),
        coords,
    };
    ActionGroupoidElement::new(flag, p.b_minus.inverse()?, tol)
}

/// The twist map G^{u,v} → G^{v,u}: g = cb = b_-c′ ↦ b_-⁻¹c = c′b⁻¹. Both
/// descriptions are computed and compared; the result carries the swapped
/// cell labels with the same representatives.
pub fn twist(p: &CellPoint, tol: &Tolerance) -> Result<CellPoint> {
    let route1 = p.b_minus.inverse()?.mul(&p.c);
    let route2 = p.c_prime.mul(&p.b.inverse()?);
    if !route1.approx_eq(&route2, 1e-6) {
        return Err(DbcError::Factorization("twist routes disagree".into()));
    }
    CellPoint::with_reps(
        route1,
        p.v.clone(),
        p.u.clone(),
        p.vrep.clone(),
        p.urep.clone(),
        tol,
    )
}

/// Left action of G^{ū,ū} on G^{u,v}: g ▷ x = b_{-,g} · x, defined when
/// τ_ū(g) = ϖ(x) (the flag of x's left slice factor).
pub fn act_left(g: &GroupoidElement, x: &CellPoint, tol: &Tolerance) -> Result<CellPoint> {
    if g.pt.v != x.u {
        return Err(DbcError::MomentMatch { dev: f64::INFINITY });
    }
    let moment = x.flag_left()?;
    let dev = g.target.dist(&moment);
    if !g.target.approx_eq(&moment, tol.tol_eq.max(1e-7)) {
        return Err(DbcError::MomentMatch { dev });
    }
    let result = g.pt.b_minus.mul(&x.g);
    let alt = g.pt.g.mul(&x.b);
    if !result.approx_eq(&alt, 1e-6) {
        return Err(DbcError::Factorization("left action routes disagree".into()));
    }
    CellPoint::with_reps(
        result,
        x.u.clone(),
        x.v.clone(),
        x.urep.clone(),
        x.vrep.clone(),
        tol,
    )
}

/// Right action of G^{v̄,v̄} on G^{u,v}: x ◁ h = x · b″_h, defined when
/// ϖ^{u,v}_v̄(x) = θ_v̄(h) (the flag of x's right slice factor).
pub fn act_right(x: &CellPoint, h: &GroupoidElement, tol: &Tolerance) -> Result<CellPoint> {
    if h.pt.v != x.v {
        return Err(DbcError::MomentMatch { dev: f64::INFINITY });
    }
    let moment = x.flag_right()?;
    let dev = h.source.dist(&moment);
    if !h.source.approx_eq(&moment, tol.tol_eq.max(1e-7)) {
        return Err(DbcError::MomentMatch { dev });
    }
    let result = x.g.mul(&h.pt.b);
    let alt = x.b_minus.mul(&h.pt.g);
    if !result.approx_eq(&alt, 1e-6) {
        return Err(DbcError::Factorization("right action routes disagree".into()));
    }
    CellPoint::with_reps(
        result,
        x.u.clone(),
        x.v.clone(),
        x.urep.clone(),
        x.vrep.clone(),
        tol,
    )
}

/// Sample a groupoid element composable after `g` (θ of the result equals
/// τ(g)), using the exact fiber parametrization.
pub fn sample_composable(
    g: &GroupoidElement,
    rng: &mut impl rand::Rng,
    tol: &Tolerance,
) -> Result<GroupoidElement> {
    let pt = crate::cells::sample_theta_fiber(&g.pt.c_prime, &g.pt.v, &g.pt.vrep, rng, tol)?;
    GroupoidElement::new(pt)
}

/// Sample a groupoid element with prescribed source flag.
pub fn sample_with_source(
    fp: &FlagPoint,
    rng: &mut impl rand::Rng,
    tol: &Tolerance,
) -> Result<GroupoidElement> {
    let c = fp.matrix();
    let pt = crate::cells::sample_theta_fiber(&c, &fp.cell, &fp.rep, rng, tol)?;
    GroupoidElement::new(pt)
}

/// Sample a groupoid element with prescribed target flag: invert a sample
/// with that source.
pub fn sample_with_target(
    fp: &FlagPoint,
    rng: &mut impl rand::Rng,
    tol: &Tolerance,
) -> Result<GroupoidElement> {
    let with_source = sample_with_source(fp, rng, tol)?;
    with_source.inverse(tol)
}
