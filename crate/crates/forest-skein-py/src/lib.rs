//! Python bindings.
//!
//! Structured results cross the boundary as JSON and are decoded with the
//! standard `json` module, so Python sees plain dicts and lists.

use forest_skein::context::Context;
use forest_skein::fraction::{self, GroupElement};
use forest_skein::group_presentation::{
    abelianization, f_tau_optimized, finite_presentation, infinite_presentation, monoid_presentation,
    render_group_word,
};
use forest_skein::ordered::{self, OrderedPoint, PermutationElement};
use forest_skein::ore_spine;
use forest_skein::{corpus, Colour, FskError, Outcome, SkeinPresentation, Tree, Tri};
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

fn err(e: FskError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn tri(t: Tri) -> Option<bool> {
    match t {
        Tri::Yes => Some(true),
        Tri::No => Some(false),
        Tri::Unknown => None,
    }
}

/// A skein presentation together with its arithmetic context.
#[pyclass(unsendable, module = "forest_skein_py")]
struct Presentation {
    ctx: Context,
}

impl Presentation {
    fn p(&self) -> &SkeinPresentation {
        &self.ctx.p
    }

    fn tree(&self, text: &str) -> PyResult<Tree> {
        Tree::parse(text, &self.p().palette).map_err(err)
    }

    fn base(&self, base: Option<&str>) -> PyResult<Colour> {
        match base {
            None => Ok(Colour(0)),
            Some(n) => self.p().palette.lookup(n).ok_or_else(|| PyKeyError::new_err(format!("unknown colour {n}"))),
        }
    }

    fn element(&self, text: &str, base: Colour, bound: usize) -> PyResult<Option<GroupElement>> {
        Ok(fraction::parse_expression(&self.ctx, text, base, bound).map_err(err)?.found())
    }

    fn point(&self, text: &str) -> PyResult<OrderedPoint> {
        let x = OrderedPoint::parse(text, &self.p().palette).map_err(err)?;
        ordered::normalize_point(&self.ctx, &x.tree, x.leaf).map_err(err)
    }
}

#[pymethods]
impl Presentation {
    /// Parse the `.fsk` text format.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        let p = SkeinPresentation::parse(text).map_err(err)?;
        Ok(Presentation { ctx: Context::new(&p) })
    }

    /// A built-in example by name.
    #[staticmethod]
    fn example(name: &str) -> PyResult<Self> {
        let p = corpus::get(name).ok_or_else(|| PyKeyError::new_err(format!("unknown example {name}")))?;
        Ok(Presentation { ctx: Context::new(&p) })
    }

    #[staticmethod]
    fn examples() -> Vec<&'static str> {
        corpus::names()
    }

    #[getter]
    fn name(&self) -> String {
        self.p().label().to_string()
    }

    #[getter]
    fn colours(&self) -> Vec<String> {
        self.p().palette.names().to_vec()
    }

    fn render(&self) -> String {
        self.p().render()
    }

    fn is_complemented(&self) -> bool {
        self.p().is_complemented()
    }

    /// True, False, or None when undecided.
    fn is_complete(&self) -> Option<bool> {
        tri(self.ctx.completeness.verdict)
    }

    /// Left-cancellativity certificate.
    #[pyo3(signature = (bound = ore_spine::DEFAULT_LC_BOUND))]
    fn left_cancellative<'py>(&self, py: Python<'py>, bound: usize) -> PyResult<Bound<'py, PyAny>> {
        let r = ore_spine::decide_lc(&self.ctx, bound);
        to_py(py, &json!(ore_spine::lc_certificate(&r, &self.p().palette)))
    }

    /// Ore certificate or refutation.
    #[pyo3(signature = (bound = ore_spine::DEFAULT_COFINAL_BOUND))]
    fn ore<'py>(&self, py: Python<'py>, bound: usize) -> PyResult<Bound<'py, PyAny>> {
        let d = ore_spine::decide_ore(&self.ctx, bound);
        to_py(py, &json!(d.to_certificate(&self.p().palette)))
    }

    #[pyo3(signature = (max_carets = ore_spine::DEFAULT_CARET_BOUND, max_stages = ore_spine::DEFAULT_STAGE_BOUND))]
    fn spine<'py>(&self, py: Python<'py>, max_carets: usize, max_stages: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &ore_spine::spine(&self.ctx, max_carets, max_stages).to_json(&self.p().palette))
    }

    fn trees_equal(&self, s: &str, t: &str) -> PyResult<Option<bool>> {
        Ok(tri(self.ctx.trees_equal(&self.tree(s)?, &self.tree(t)?)))
    }

    /// `kind` is `finite`, `infinite`, `monoid` or `f_tau`.
    #[pyo3(signature = (kind = "finite", max_index = 3, base = None))]
    fn group_presentation<'py>(
        &self,
        py: Python<'py>,
        kind: &str,
        max_index: usize,
        base: Option<&str>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let b = self.base(base)?;
        let p = self.p();
        let pres = match kind {
            "finite" => finite_presentation(p, b),
            "infinite" => infinite_presentation(p, b, max_index),
            "monoid" => monoid_presentation(p, b, max_index),
            "f_tau" => f_tau_optimized(p, b).map_err(err)?,
            other => return Err(PyValueError::new_err(format!("unknown presentation kind {other}"))),
        };
        let ab = abelianization(&pres);
        let v = json!({
            "generators": pres.generators.iter().map(|g| g.render(&p.palette)).collect::<Vec<_>>(),
            "relations": pres.relations.iter().map(|r| [render_group_word(&r.lhs, &p.palette), render_group_word(&r.rhs, &p.palette)]).collect::<Vec<_>>(),
            "text": pres.render_text(),
            "cas": pres.render_cas(),
            "abelianization": ab.render(),
        });
        to_py(py, &v)
    }

    /// Normal form of a group word or `[tree ; tree]`; None when unresolved.
    #[pyo3(signature = (expr, base = None, bound = 14))]
    fn eval(&self, expr: &str, base: Option<&str>, bound: usize) -> PyResult<Option<String>> {
        let b = self.base(base)?;
        Ok(self
            .element(expr, b, bound)?
            .map(|g| fraction::normal_form(&self.ctx, &g).element.render(&self.p().palette)))
    }

    #[pyo3(signature = (lhs, rhs, base = None, bound = 14))]
    fn equal(&self, lhs: &str, rhs: &str, base: Option<&str>, bound: usize) -> PyResult<Option<bool>> {
        let b = self.base(base)?;
        match (self.element(lhs, b, bound)?, self.element(rhs, b, bound)?) {
            (Some(g), Some(h)) => Ok(tri(fraction::equals(&self.ctx, &g, &h, bound))),
            _ => Ok(None),
        }
    }

    /// -1, 0, 1, or None when unresolved; points are `tree:leaf`.
    #[pyo3(signature = (x, y, bound = 16))]
    fn compare(&self, x: &str, y: &str, bound: usize) -> PyResult<Option<i8>> {
        let (x, y) = (self.point(x)?, self.point(y)?);
        Ok(ordered::compare(&self.ctx, &x, &y, bound).map(|o| o as i8))
    }

    /// Image of a point under `[tree ; perm ; tree]`.
    #[pyo3(signature = (element, point, bound = 16))]
    fn act(&self, element: &str, point: &str, bound: usize) -> PyResult<Option<String>> {
        let g = PermutationElement::parse(element, &self.p().palette).map_err(err)?;
        let x = self.point(point)?;
        Ok(match ordered::act(&self.ctx, &g, &x, bound) {
            Outcome::Found(y) => Some(y.render(&self.p().palette)),
            _ => None,
        })
    }

    /// A verified cyclic element mapping the point set `a` onto `b`.
    #[pyo3(signature = (a, b, bound = 16))]
    fn transitivity_witness(&self, a: Vec<String>, b: Vec<String>, bound: usize) -> PyResult<Option<String>> {
        let a = a.iter().map(|s| self.point(s)).collect::<PyResult<Vec<_>>>()?;
        let b = b.iter().map(|s| self.point(s)).collect::<PyResult<Vec<_>>>()?;
        Ok(match ordered::transitivity_witness(&self.ctx, &a, &b, bound).map_err(err)? {
            Outcome::Found(w) if w.verified == Tri::Yes => Some(w.element.render(&self.p().palette)),
            _ => None,
        })
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.p().label())
    }
}

#[pymodule]
fn forest_skein_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Presentation>()?;
    Ok(())
}
