use crate::singular::SingularPoint;
use crate::Certification;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HodgeReport {
    pub mu_total: usize,
    pub sigma: usize,
    /// h³ = 10 − μ_tot + σ.
    pub h3: i64,
    /// B = Σ b¹¹, when every point has known local invariants.
    pub b: Option<usize>,
    /// L = Σ l¹¹.
    pub l: Option<usize>,
    /// h^{1,2} = 5 − B.
    pub h12: Option<i64>,
    /// h^{2,1} = 5 − (L − σ) − B.
    pub h21: Option<i64>,
    pub certification: Certification,
}

/// Hodge–Du Bois numbers of H³(X); degrades to h³ alone when some point lacks (b¹¹, l¹¹).
pub fn hodge_numbers(points: &[SingularPoint], sigma: usize, sigma_cert: Certification) -> HodgeReport {
    let mu_total: usize = points.iter().map(|p| p.milnor).sum();
    let h3 = 10 - mu_total as i64 + sigma as i64;
    let known = points.iter().all(|p| p.b11.is_some() && p.l11.is_some());
    let (b, l) = if known {
        (Some(points.iter().map(|p| p.b11.unwrap()).sum::<usize>()), Some(points.iter().map(|p| p.l11.unwrap()).sum::<usize>()))
    } else {
        (None, None)
    };
    let h12 = b.map(|b| 5 - b as i64);
    let h21 = b.zip(l).map(|(b, l)| 5 - (l as i64 - sigma as i64) - b as i64);
    let exact_points = points.iter().all(|p| p.certification == Certification::Exact);
    let certification = match (exact_points, sigma_cert) {
        (true, Certification::Exact) => Certification::Exact,
        (true, Certification::CertifiedNumeric) => Certification::CertifiedNumeric,
        _ => Certification::Uncertified,
    };
    HodgeReport { mu_total, sigma, h3, b, l, h12, h21, certification }
}
