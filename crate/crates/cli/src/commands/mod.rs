mod biodiv;
mod estimate;
mod simulate;

pub use biodiv::biodiv;
pub use estimate::estimate;
pub use simulate::simulate;

use seneca_core::EstimatorKind;

fn estimators_or_all(chosen: &[EstimatorKind]) -> Vec<EstimatorKind> {
    if chosen.is_empty() {
        EstimatorKind::ALL.to_vec()
    } else {
        let mut out = Vec::with_capacity(chosen.len());
        for &k in chosen {
            if !out.contains(&k) {
                out.push(k);
            }
        }
        out
    }
}
