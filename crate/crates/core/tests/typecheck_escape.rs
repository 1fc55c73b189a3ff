//! Runs in its own process: the switch is global.

use optkit::numerics::typecheck::{
    require, set_type_checks_disabled, type_checks_disabled, ElementTypeRequirement, TypeDescriptor,
    DISABLE_TYPE_CHECKS_ENV,
};
use optkit::numerics::ElementType;

#[test]
fn environment_switch_then_programmatic_override() {
    std::env::set_var(DISABLE_TYPE_CHECKS_ENV, "1");
    assert!(type_checks_disabled());

    let integer = [TypeDescriptor::of::<i64>()];
    let sparse = [TypeDescriptor::sparse(ElementType::F64)];
    let mixed = [TypeDescriptor::of::<f32>(), TypeDescriptor::of::<f64>()];
    assert!(require(ElementTypeRequirement::FloatingPoint, &integer).is_ok());
    assert!(require(ElementTypeRequirement::DenseFloatingPoint, &sparse).is_ok());
    assert!(require(ElementTypeRequirement::SameInternalTypes, &mixed).is_ok());

    set_type_checks_disabled(false);
    assert!(!type_checks_disabled());
    let err = require(ElementTypeRequirement::FloatingPoint, &integer).unwrap_err();
    assert!(err.message.contains(DISABLE_TYPE_CHECKS_ENV));
    assert_eq!(err.offending, integer);
    let err = require(ElementTypeRequirement::DenseFloatingPoint, &sparse).unwrap_err();
    assert_eq!(err.requirement, ElementTypeRequirement::DenseFloatingPoint);
    assert!(require(ElementTypeRequirement::SameInternalTypes, &mixed).is_err());
    assert!(require(ElementTypeRequirement::DenseFloatingPoint, &[TypeDescriptor::of::<f32>()]).is_ok());

    set_type_checks_disabled(true);
    assert!(require(ElementTypeRequirement::FloatingPoint, &integer).is_ok());
}
