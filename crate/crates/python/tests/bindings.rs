use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module(code: &std::ffi::CStr) {
    Python::initialize();
    Python::attach(|py| {
        let m = PyModule::new(py, "coideal").unwrap();
        coideal_py::coideal_py(&m).unwrap();
        let sys = py.import("sys").unwrap();
        sys.getattr("modules").unwrap().set_item("coideal", &m).unwrap();
        if let Err(e) = py.run(code, None, None) {
            e.display(py);
            panic!("python code failed");
        }
    });
}

#[test]
fn normal_forms_from_python() {
    with_module(
        c"
import coideal
u = coideal.Uq('A1')
assert u.normal_form('E1*F1') == 'F1*E1 + (K1 - K1^-1)/(q - q^-1)'
assert u.equal('K1*K1^-1', '1')
",
    );
}

#[test]
fn cases_sessions_and_reports() {
    with_module(
        c"
import coideal, json
c = coideal.Case('I-B3')
assert c.tau_image(1, 2, minus=True) == '-q^2*B2*B1 + B1*B2'
s = coideal.Session('III-A7')
assert s.eval('nf(E1*B1 - B1*E1 - (K1 - K1^-1)/(q - q^-1))') == '0'
try:
    s.eval('nf(B1')
    raise AssertionError('no error')
except SyntaxError:
    pass
r = coideal.run_suite('I-C3', checks=['relations'])
assert (r.passed, r.failed, r.exit_code()) == (6, 0, 0)
assert json.loads(r.to_json())[0]['check'] == 'relations'
assert coideal.Realization('III-A3').dim_k == 10
",
    );
}
