//! Runs in its own process because it sets the state-cap variable.

use partial_polytopes::ehrhart::{
    count_lattice_points, ehrhart_polynomial, PolytopeKind, STATE_CAP_VAR,
};
use partial_polytopes::Error;

#[test]
fn cap_from_environment() {
    std::env::set_var(STATE_CAP_VAR, "1000");
    assert_eq!(
        count_lattice_points(PolytopeKind::Pasm, 3, 3, 9),
        Err(Error::ResourceGuard {
            states: 10_000,
            cap: 1000
        })
    );
    assert!(matches!(
        ehrhart_polynomial(PolytopeKind::PPerm, 3, 4),
        Err(Error::ResourceGuard { cap: 1000, .. })
    ));
    assert!(count_lattice_points(PolytopeKind::Pasm, 2, 2, 3).is_ok());
    std::env::remove_var(STATE_CAP_VAR);
}
