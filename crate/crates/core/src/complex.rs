//! Dual intersection complex of a strictly semistable special fiber and its
//! embedding as the skeleton in ℚ^{components}.
//!
//! A stratum is a nonempty set of component indices `I` with `D_I ≠ ∅`. Each
//! maximal face `I` with scale `val_a` embeds as the simplex
//! `{ r ≥ 0 : supp r ⊆ I, Σ r_i = val_a }`, and the skeleton is their union.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Finding, ValidationReport};
use crate::ratlinalg::{RatVector, Rational};

/// A set of component indices, kept sorted and deduplicated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Stratum(Vec<usize>);

impl Stratum {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let set: BTreeSet<usize> = indices.into_iter().collect();
        Stratum(set.into_iter().collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &Stratum) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn union(&self, other: &Stratum) -> Stratum {
        Stratum::new(self.0.iter().chain(&other.0).copied())
    }

    pub fn with(&self, i: usize) -> Stratum {
        Stratum::new(self.0.iter().copied().chain([i]))
    }

    pub fn intersects(&self, other: &Stratum) -> bool {
        self.0.iter().any(|&i| other.contains(i))
    }

    /// All nonempty proper subsets obtained by dropping one index.
    fn facets(&self) -> impl Iterator<Item = Stratum> + '_ {
        (0..self.0.len()).filter_map(move |k| {
            let rest: Vec<usize> = self
                .0
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, &i)| i)
                .collect();
            (!rest.is_empty()).then_some(Stratum(rest))
        })
    }
}

impl fmt::Debug for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.0).finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaximalFace {
    pub stratum: Stratum,
    pub val_a: Rational,
}

/// One simplex of the embedded skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedFace {
    pub stratum: Stratum,
    pub val_a: Rational,
    /// `val_a · e_i` for each `i` in the stratum, over all components.
    pub vertices: Vec<RatVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionComplex {
    name: String,
    components: Vec<String>,
    strata: BTreeSet<Stratum>,
    maximal_faces: Vec<MaximalFace>,
}

impl IntersectionComplex {
    /// Builds the complex from component names. Structural invariants are not
    /// checked here; see [`validate_complex`].
    pub fn new(
        name: impl Into<String>,
        components: Vec<String>,
        strata: Vec<Vec<String>>,
        maximal_faces: Vec<(Vec<String>, Rational)>,
    ) -> Result<Self, Error> {
        for (i, c) in components.iter().enumerate() {
            if components[..i].contains(c) {
                return Err(Error::Invalid(format!("duplicate component {c:?}")));
            }
        }
        let mut complex = IntersectionComplex {
            name: name.into(),
            components,
            strata: BTreeSet::new(),
            maximal_faces: Vec::new(),
        };
        for names in strata {
            let s = complex.stratum_of(&names)?;
            complex.strata.insert(s);
        }
        for (names, val_a) in maximal_faces {
            let stratum = complex.stratum_of(&names)?;
            complex.maximal_faces.push(MaximalFace { stratum, val_a });
        }
        Ok(complex)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn strata(&self) -> impl Iterator<Item = &Stratum> {
        self.strata.iter()
    }

    pub fn maximal_faces(&self) -> &[MaximalFace] {
        &self.maximal_faces
    }

    pub fn is_stratum(&self, s: &Stratum) -> bool {
        self.strata.contains(s)
    }

    pub fn index_of(&self, component: &str) -> Result<usize, Error> {
        self.components
            .iter()
            .position(|c| c == component)
            .ok_or_else(|| Error::UnknownComponent(component.to_string()))
    }

    /// Resolves component names into a stratum (not checked for membership).
    pub fn stratum_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Stratum, Error> {
        if names.is_empty() {
            return Err(Error::Invalid("empty stratum".into()));
        }
        names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<Vec<_>, _>>()
            .map(Stratum::new)
    }

    pub fn names(&self, s: &Stratum) -> Vec<String> {
        s.indices()
            .iter()
            .map(|&i| self.components[i].clone())
            .collect()
    }

    pub fn display(&self, s: &Stratum) -> String {
        format!("{{{}}}", self.names(s).join(","))
    }

    /// Scale of the face containing `s`, read from the first maximal face containing it.
    pub fn val_a(&self, s: &Stratum) -> Option<&Rational> {
        self.maximal_faces
            .iter()
            .find(|f| s.is_subset(&f.stratum))
            .map(|f| &f.val_a)
    }

    /// Support of a point, as component indices in declared order.
    pub fn support(&self, p: &RatVector) -> Stratum {
        Stratum::new(
            self.components
                .iter()
                .enumerate()
                .filter(|(_, c)| !p.get(c).is_zero())
                .map(|(i, _)| i),
        )
    }

    /// Dense coordinates in component order.
    pub fn coords(&self, p: &RatVector) -> Result<Vec<Rational>, Error> {
        p.check_labels(&self.components)?;
        Ok(p.aligned(&self.components))
    }

    pub fn point(&self, coords: Vec<Rational>) -> RatVector {
        RatVector::from_values(&self.components, coords)
    }
}

/// Checks every structural invariant; an empty report means the complex is valid.
pub fn validate_complex(c: &IntersectionComplex) -> ValidationReport {
    let mut report = ValidationReport::default();

    for (i, name) in c.components.iter().enumerate() {
        if !c.strata.contains(&Stratum::new([i])) {
            report.push(Finding::error(
                "E_NOT_DOWNWARD_CLOSED",
                format!("component {name} has no vertex stratum {{{name}}}"),
            ));
        }
    }
    for s in &c.strata {
        for facet in s.facets() {
            if !c.strata.contains(&facet) {
                report.push(Finding::error(
                    "E_NOT_DOWNWARD_CLOSED",
                    format!(
                        "{} is a stratum but its face {} is not",
                        c.display(s),
                        c.display(&facet)
                    ),
                ));
            }
        }
    }

    let mut seen = BTreeSet::new();
    for face in &c.maximal_faces {
        let shown = c.display(&face.stratum);
        if !seen.insert(face.stratum.clone()) {
            report.push(Finding::error(
                "E_NOT_MAXIMAL",
                format!("maximal face {shown} is listed twice"),
            ));
        }
        if !c.strata.contains(&face.stratum) {
            report.push(Finding::error(
                "E_NOT_MAXIMAL",
                format!("maximal face {shown} is not a stratum"),
            ));
        }
        if let Some(bigger) = c
            .strata
            .iter()
            .find(|s| s.len() > face.stratum.len() && face.stratum.is_subset(s))
        {
            report.push(Finding::error(
                "E_NOT_MAXIMAL",
                format!("maximal face {shown} lies in stratum {}", c.display(bigger)),
            ));
        }
        if !face.val_a.is_positive() {
            report.push(Finding::error(
                "E_VAL_A_NONPOSITIVE",
                format!("maximal face {shown} has val_a = {}", face.val_a),
            ));
        }
    }

    for (k, f) in c.maximal_faces.iter().enumerate() {
        for g in &c.maximal_faces[k + 1..] {
            if f.stratum.intersects(&g.stratum) && f.val_a != g.val_a {
                report.push(Finding::error(
                    "E_GLUE",
                    format!(
                        "faces {} (val_a {}) and {} (val_a {}) meet but have different scales",
                        c.display(&f.stratum),
                        f.val_a,
                        c.display(&g.stratum),
                        g.val_a
                    ),
                ));
            }
        }
    }

    for s in &c.strata {
        if !c.maximal_faces.iter().any(|f| s.is_subset(&f.stratum)) {
            report.push(Finding::error(
                "E_ORPHAN_STRATUM",
                format!("stratum {} lies in no maximal face", c.display(s)),
            ));
        }
    }

    report
}

/// The face whose relative interior contains `p`, i.e. `supp(p)`.
pub fn locate(c: &IntersectionComplex, p: &RatVector) -> Result<Stratum, Error> {
    let coords = c.coords(p)?;
    if let Some((i, v)) = coords.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NotInSkeleton(format!(
            "coordinate {} = {v} is negative",
            c.components[i]
        )));
    }
    let support = c.support(p);
    if support.is_empty() {
        return Err(Error::NotInSkeleton(
            "the origin is not in the skeleton".into(),
        ));
    }
    if !c.is_stratum(&support) {
        return Err(Error::NotInSkeleton(format!(
            "support {} is not a stratum",
            c.display(&support)
        )));
    }
    let total: Rational = coords.iter().sum();
    match c.val_a(&support) {
        Some(val_a) if *val_a == total => Ok(support),
        Some(val_a) => Err(Error::NotInSkeleton(format!(
            "coordinates sum to {total}, face {} has val_a {val_a}",
            c.display(&support)
        ))),
        None => Err(Error::NotInSkeleton(format!(
            "support {} lies in no maximal face",
            c.display(&support)
        ))),
    }
}

/// `J_I = { j : I ∪ {j} is a stratum }`; contains `I` itself.
pub fn j_set(c: &IntersectionComplex, stratum: &Stratum) -> Result<Stratum, Error> {
    if !c.is_stratum(stratum) {
        return Err(Error::UnknownStratum(format!("{stratum:?}")));
    }
    Ok(Stratum::new(
        (0..c.components.len()).filter(|&j| c.is_stratum(&stratum.with(j))),
    ))
}

/// Simplices of the embedded skeleton, one per maximal face.
pub fn embed_faces(c: &IntersectionComplex) -> Result<Vec<EmbeddedFace>, Error> {
    let report = validate_complex(c);
    if !report.is_ok() {
        return Err(Error::Validation(report.findings));
    }
    Ok(c.maximal_faces
        .iter()
        .map(|f| {
            let vertices = f
                .stratum
                .indices()
                .iter()
                .map(|&i| {
                    let mut coords = vec![Rational::zero(); c.components.len()];
                    coords[i] = f.val_a.clone();
                    c.point(coords)
                })
                .collect();
            EmbeddedFace {
                stratum: f.stratum.clone(),
                val_a: f.val_a.clone(),
                vertices,
            }
        })
        .collect())
}

/// Barycenter of a stratum scaled to its face, or `None` when it lies in no maximal face.
pub fn barycenter(c: &IntersectionComplex, s: &Stratum) -> Option<RatVector> {
    let val_a = c.val_a(s)?;
    let share = val_a / &Rational::from(s.len() as i64);
    let mut coords = vec![Rational::zero(); c.components.len()];
    for &i in s.indices() {
        coords[i] = share.clone();
    }
    Some(c.point(coords))
}

/// Maps every stratum to `J_I`; convenient for repeated support checks.
pub fn j_sets(c: &IntersectionComplex) -> BTreeMap<Stratum, Stratum> {
    c.strata
        .iter()
        .map(|s| (s.clone(), j_set(c, s).expect("stratum of c")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlinalg::rat_parse;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn subsets_up_to(n: usize, max: usize) -> Vec<Vec<String>> {
        (1u32..(1 << n))
            .filter(|m| m.count_ones() as usize <= max)
            .map(|m| {
                (0..n)
                    .filter(|i| m & (1 << i) != 0)
                    .map(|i| format!("D{i}"))
                    .collect()
            })
            .collect()
    }

    fn hollow_tetrahedron() -> IntersectionComplex {
        let faces = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
            .iter()
            .map(|f| (f.iter().map(|i| format!("D{i}")).collect(), Rational::one()))
            .collect();
        IntersectionComplex::new(
            "k3",
            names(&["D0", "D1", "D2", "D3"]),
            subsets_up_to(4, 3),
            faces,
        )
        .unwrap()
    }

    fn pt(c: &IntersectionComplex, v: &[&str]) -> RatVector {
        c.point(v.iter().map(|s| rat_parse(s).unwrap()).collect())
    }

    #[test]
    fn hollow_tetrahedron_is_valid() {
        let report = validate_complex(&hollow_tetrahedron());
        assert!(report.is_empty(), "{report:?}");
    }

    #[test]
    fn missing_face_is_not_downward_closed() {
        let c = IntersectionComplex::new(
            "bad",
            names(&["0", "1"]),
            vec![names(&["0"]), names(&["0", "1"])],
            vec![(names(&["0", "1"]), Rational::one())],
        )
        .unwrap();
        assert!(validate_complex(&c).has("E_NOT_DOWNWARD_CLOSED"));
    }

    #[test]
    fn mismatched_scales_fail_to_glue() {
        let c = IntersectionComplex::new(
            "bad",
            names(&["0", "1", "2"]),
            vec![
                names(&["0"]),
                names(&["1"]),
                names(&["2"]),
                names(&["0", "1"]),
                names(&["0", "2"]),
            ],
            vec![
                (names(&["0", "1"]), Rational::one()),
                (names(&["0", "2"]), Rational::from(2)),
            ],
        )
        .unwrap();
        let report = validate_complex(&c);
        assert!(report.has("E_GLUE"));
        assert_eq!(report.findings.len(), 1);
    }

    #[test]
    fn other_violations() {
        let c = IntersectionComplex::new(
            "bad",
            names(&["0", "1", "2"]),
            vec![
                names(&["0"]),
                names(&["1"]),
                names(&["2"]),
                names(&["0", "1"]),
            ],
            vec![(names(&["0"]), Rational::zero())],
        )
        .unwrap();
        let report = validate_complex(&c);
        assert!(report.has("E_NOT_MAXIMAL"));
        assert!(report.has("E_VAL_A_NONPOSITIVE"));
        assert!(report.has("E_ORPHAN_STRATUM"));
    }

    #[test]
    fn unknown_component_is_an_error() {
        let err =
            IntersectionComplex::new("x", names(&["0"]), vec![names(&["9"])], vec![]).unwrap_err();
        assert_eq!(err.code(), "E_UNKNOWN_COMPONENT");
    }

    #[test]
    fn locate_examples() {
        let c = hollow_tetrahedron();
        let edge = locate(&c, &pt(&c, &["1/2", "1/2", "0", "0"])).unwrap();
        assert_eq!(c.names(&edge), names(&["D0", "D1"]));
        let vertex = locate(&c, &pt(&c, &["1", "0", "0", "0"])).unwrap();
        assert_eq!(c.names(&vertex), names(&["D0"]));
        let err = locate(&c, &pt(&c, &["1/4", "1/4", "1/4", "1/4"])).unwrap_err();
        assert_eq!(err.code(), "E_NOT_IN_SKELETON");
    }

    #[test]
    fn locate_rejects_bad_points() {
        let c = hollow_tetrahedron();
        for p in [
            ["2", "-1", "0", "0"],
            ["1/2", "1/4", "0", "0"],
            ["0", "0", "0", "0"],
        ] {
            assert_eq!(
                locate(&c, &pt(&c, &p)).unwrap_err().code(),
                "E_NOT_IN_SKELETON"
            );
        }
    }

    #[test]
    fn j_set_examples() {
        let c = hollow_tetrahedron();
        let all = Stratum::new(0..4);
        assert_eq!(j_set(&c, &Stratum::new([0, 1])).unwrap(), all);
        assert_eq!(j_set(&c, &Stratum::new([0])).unwrap(), all);
        let top = Stratum::new([0, 1, 2]);
        assert_eq!(j_set(&c, &top).unwrap(), top);
        assert_eq!(
            j_set(&c, &Stratum::new([0, 1, 2, 3])).unwrap_err().code(),
            "E_UNKNOWN_STRATUM"
        );
    }

    #[test]
    fn embed_examples() {
        let c = hollow_tetrahedron();
        let faces = embed_faces(&c).unwrap();
        assert_eq!(faces.len(), 4);
        for f in &faces {
            assert_eq!(f.vertices.len(), 3);
            for v in &f.vertices {
                assert_eq!(v.sum(), Rational::one());
                assert_eq!(v.support().len(), 1);
            }
        }

        let seg = IntersectionComplex::new(
            "seg",
            names(&["0", "1"]),
            vec![names(&["0"]), names(&["1"]), names(&["0", "1"])],
            vec![(names(&["0", "1"]), Rational::from(2))],
        )
        .unwrap();
        let faces = embed_faces(&seg).unwrap();
        assert_eq!(
            faces[0].vertices,
            vec![pt(&seg, &["2", "0"]), pt(&seg, &["0", "2"])]
        );

        let chain = IntersectionComplex::new(
            "chain",
            names(&["0", "1", "2"]),
            vec![
                names(&["0"]),
                names(&["1"]),
                names(&["2"]),
                names(&["0", "1"]),
                names(&["1", "2"]),
            ],
            vec![
                (names(&["0", "1"]), Rational::one()),
                (names(&["1", "2"]), Rational::one()),
            ],
        )
        .unwrap();
        let faces = embed_faces(&chain).unwrap();
        assert_eq!(faces.len(), 2);
        assert_eq!(faces[0].vertices[1], faces[1].vertices[0]);
    }

    #[test]
    fn locate_inverts_embedding() {
        let c = hollow_tetrahedron();
        for f in embed_faces(&c).unwrap() {
            for (v, &i) in f.vertices.iter().zip(f.stratum.indices()) {
                assert_eq!(locate(&c, v).unwrap(), Stratum::new([i]));
            }
        }
        for s in c.strata() {
            let b = barycenter(&c, s).unwrap();
            assert_eq!(&locate(&c, &b).unwrap(), s);
        }
    }

    #[test]
    fn j_set_is_antitone() {
        let c = hollow_tetrahedron();
        let js = j_sets(&c);
        for (s, js_s) in &js {
            assert!(s.is_subset(js_s));
            for (t, js_t) in &js {
                if s.is_subset(t) {
                    assert!(js_t.is_subset(js_s), "{s:?} {t:?}");
                }
            }
        }
    }
}
