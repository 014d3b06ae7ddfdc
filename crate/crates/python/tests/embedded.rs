use opcyl_py::opcyl_py;
use pyo3::prelude::*;
use pyo3::ffi::c_str;

#[test]
fn module_round_trip() {
    pyo3::append_to_inittab!(opcyl_py);
    Python::initialize();
    Python::attach(|py| {
        py.run(
            c_str!(
                r#"
import opcyl_py as op
a = op.Operad("ainf")
assert a.parse("mu_2 o1 mu_2").diff().is_zero()
assert str(a.cyl_diff("sigma mu_2")) == "i0:mu_2 - i1:mu_2"
assert str(a.homotopy("i1:mu_2")) == "sigma:mu_2"
s = a.cyl().parse("sigma:mu_3")
assert len(s.diff()) == 6 and s.diff().diff().is_zero()
assert a.parse_json(a.parse("mu_3").to_json()) == a.parse("mu_3")
ok, line = op.verify_suite("d2", max_arity=3, max_vertices=2)
assert ok, line
try:
    a.parse("mu_2 +")
    raise AssertionError
except op.OpcylError:
    pass
"#
            ),
            None,
            None,
        )
        .unwrap();
    });
}
