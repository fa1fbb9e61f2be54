//! Type classification: finite / affine / indefinite per component,
//! and the hyperbolicity flavors of the whole system.

use crate::gram::{irreducible_components, signature_of, signature_of_matrix, Signature};
use crate::scalar::Scalar;
use crate::system::RootSystem;

#[derive(Clone, Debug, serde::Serialize)]
pub struct TypeReport {
    pub irreducible: bool,
    pub components: Vec<Vec<usize>>,
    pub component_types: Vec<String>,
    pub signature: Signature,
    pub weakly_hyperbolic: bool,
    pub hyperbolic: bool,
    pub compact_hyperbolic: bool,
}

fn type_of_signature(sig: &Signature) -> &'static str {
    if sig.negative >= 1 {
        "indefinite"
    } else if sig.zero >= 1 {
        "affine"
    } else {
        "finite"
    }
}

pub fn classify(system: &RootSystem) -> TypeReport {
    let gram = system.gram();
    let components = irreducible_components(gram);
    let component_types: Vec<String> = components
        .iter()
        .map(|c| type_of_signature(&signature_of(&gram.restrict(c))).to_string())
        .collect();
    let ambient: Vec<Vec<f64>> = system
        .form()
        .iter()
        .map(|r| r.iter().map(Scalar::to_f64).collect())
        .collect();
    let signature = signature_of_matrix(&ambient);
    let weakly_hyperbolic = signature.negative == 1 && signature.zero == 0;
    let (mut hyperbolic, mut compact_hyperbolic) = (weakly_hyperbolic, weakly_hyperbolic);
    if weakly_hyperbolic {
        let n = system.rank();
        for face in crate::cone::facial_subsets(system) {
            if face.indices.len() == n || face.indices.is_empty() {
                continue;
            }
            let sig = signature_of(&gram.restrict(&face.indices));
            if sig.negative >= 1 {
                hyperbolic = false;
            }
            if sig.negative >= 1 || sig.zero >= 1 {
                compact_hyperbolic = false;
            }
        }
    }
    TypeReport {
        irreducible: components.len() == 1,
        components,
        component_types,
        signature,
        weakly_hyperbolic,
        hyperbolic,
        compact_hyperbolic,
    }
}
