//! Explorer sessions: an initial state plus the actions applied to it.
//!
//! A session never stores anything a replay could not rebuild; `history[k]` is
//! the state after the first `k` actions.

use coqforge::catalog;
use coqforge::coq::{canonical_order, improper_paths, proper_mutate, CyclicOrder};
use coqforge::graph::Digraph;
use coqforge::invariants::{det_b, gcd_multiset, summarize};
use coqforge::io::{
    colors_json, int_json, ints_json, matrix_json, polynomial_json, vertices_json, zero_based, QuiverDoc,
};
use coqforge::{BigCoq, BigQuiver, BigSeed, Coq, Error, Seed};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Plain quiver mutation; an order, if given, is carried along unchanged.
    Quiver,
    /// Proper mutation of a cyclically ordered quiver.
    #[default]
    Coq,
    /// Seed mutation from an acyclic initial quiver with B, C, A, U tracked.
    Seed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateRequest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quiver: Option<QuiverDoc>,
    /// Name of a built-in example, used instead of `quiver`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub example: Option<String>,
    /// 1-based cyclic order; overrides one embedded in `quiver`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    #[serde(default)]
    pub mode: Mode,
}

/// Vertices are 1-based, as on the wire.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum Action {
    Mutate { vertex: usize },
    Wiggle { u: usize, v: usize },
}

#[derive(Debug)]
pub enum SessionError {
    NotFound(String),
    BadRequest(String),
    Unsupported(String),
    NothingToUndo,
    Core(Error),
}

impl From<Error> for SessionError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(m) => SessionError::BadRequest(m),
            e => SessionError::Core(e),
        }
    }
}

impl SessionError {
    pub fn to_json(&self) -> Value {
        match self {
            SessionError::NotFound(id) => json!({"error": "NotFound", "message": format!("no session {id}")}),
            SessionError::BadRequest(m) => json!({"error": "BadRequest", "message": m}),
            SessionError::Unsupported(m) => json!({"error": "Unsupported", "message": m}),
            SessionError::NothingToUndo => {
                json!({"error": "NothingToUndo", "message": "session is at its initial state"})
            }
            SessionError::Core(e) => coqforge::io::error_json(e),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum State {
    Quiver {
        quiver: BigQuiver,
        order: Option<CyclicOrder>,
    },
    Coq(BigCoq),
    Seed(Box<BigSeed>),
}

impl State {
    pub fn initial(req: &CreateRequest) -> Result<State, SessionError> {
        let (quiver, embedded_order, path) = match (&req.quiver, &req.example) {
            (Some(doc), None) => {
                let d = doc.to_document()?;
                (d.quiver, d.order, d.path)
            }
            (None, Some(name)) => {
                let e = catalog::named(name)
                    .ok_or_else(|| SessionError::BadRequest(format!("unknown example {name:?}")))?;
                (e.quiver, e.order, e.path)
            }
            _ => {
                return Err(SessionError::BadRequest(
                    "exactly one of \"quiver\" and \"example\" is required".into(),
                ))
            }
        };
        let n = quiver.n();
        let order = match &req.order {
            Some(o) => Some(zero_based(o, n, "order")?),
            None => embedded_order,
        };
        let check_order = |o: Vec<usize>| -> Result<CyclicOrder, SessionError> {
            if quiver.has_frozen() {
                return Err(Error::BadOrder("cyclic orders need a quiver without frozen vertices".into()).into());
            }
            Ok(CyclicOrder::new(o, n)?)
        };
        match req.mode {
            Mode::Quiver => {
                let order = order.map(check_order).transpose()?;
                let quiver = match path {
                    Some(p) => quiver.mutate_path(&p)?,
                    None => quiver,
                };
                Ok(State::Quiver { quiver, order })
            }
            Mode::Coq => {
                let order = match order {
                    Some(o) => check_order(o)?,
                    None => CyclicOrder::identity(n),
                };
                if path.is_some() {
                    return Err(SessionError::Unsupported(
                        "a mutation path needs seed or quiver mode".into(),
                    ));
                }
                Ok(State::Coq(Coq::with_order(quiver, order)?))
            }
            Mode::Seed => {
                if order.is_some() {
                    return Err(SessionError::Unsupported(
                        "seed sessions use the canonical orders of the seed".into(),
                    ));
                }
                Ok(State::Seed(Box::new(Seed::replay(
                    &quiver,
                    path.as_deref().unwrap_or(&[]),
                )?)))
            }
        }
    }

    pub fn quiver(&self) -> &BigQuiver {
        match self {
            State::Quiver { quiver, .. } => quiver,
            State::Coq(c) => c.quiver(),
            State::Seed(s) => s.quiver(),
        }
    }

    fn vertex(&self, v: usize) -> Result<usize, SessionError> {
        Ok(zero_based(&[v], self.quiver().n(), "vertex")?[0])
    }

    pub fn apply(&self, action: Action) -> Result<State, SessionError> {
        match action {
            Action::Mutate { vertex } => {
                let v = self.vertex(vertex)?;
                Ok(match self {
                    State::Quiver { quiver, order } => State::Quiver {
                        quiver: quiver.mutate(v)?,
                        order: order.clone(),
                    },
                    State::Coq(c) => State::Coq(proper_mutate(c, v)?),
                    State::Seed(s) => State::Seed(Box::new(s.mutate(v)?)),
                })
            }
            Action::Wiggle { u, v } => {
                let (u, v) = (self.vertex(u)?, self.vertex(v)?);
                match self {
                    State::Quiver {
                        quiver,
                        order: Some(order),
                    } => {
                        let c = Coq::with_order(quiver.clone(), order.clone())?.wiggle(u, v)?;
                        Ok(State::Quiver {
                            quiver: quiver.clone(),
                            order: Some(c.order().clone()),
                        })
                    }
                    State::Coq(c) => Ok(State::Coq(c.wiggle(u, v)?)),
                    State::Quiver { order: None, .. } => {
                        Err(SessionError::Unsupported("session has no cyclic order".into()))
                    }
                    State::Seed(_) => Err(SessionError::Unsupported(
                        "seed sessions use the canonical orders of the seed".into(),
                    )),
                }
            }
        }
    }

    /// The ordered quiver whose invariants and windings are reported.
    pub fn coq(&self) -> Result<Option<BigCoq>, SessionError> {
        Ok(match self {
            State::Quiver { quiver, order } => match order {
                Some(o) => Some(Coq::with_order(quiver.clone(), o.clone())?),
                None => None,
            },
            State::Coq(c) => Some(c.clone()),
            State::Seed(s) => {
                let order = if s.n() == 0 {
                    CyclicOrder::identity(0)
                } else {
                    canonical_order(s, 0)?
                };
                Some(Coq::with_order(s.quiver().clone(), order)?)
            }
        })
    }

    pub fn to_json(&self) -> Result<Value, SessionError> {
        let q = self.quiver();
        let mut out = json!({
            "n": q.n(),
            "quiver": QuiverDoc::from_quiver(q),
            "B": matrix_json(q.b()),
            "order": null,
            "colors": null,
            "proper_vertices": null,
            "improper_paths": null,
            "windings": null,
        });
        let mutable = q.mutable_part();
        let mut invariants = json!({
            "det": int_json(&det_b(&mutable)),
            "gcds": ints_json(&gcd_multiset(&mutable)),
            "acyclic": Digraph::from_quiver(q).is_acyclic(),
        });
        if let Some(c) = self.coq()? {
            let n = c.n();
            out["order"] = vertices_json(c.order().as_slice());
            let proper: Vec<usize> = (0..n).filter(|&v| improper_paths(&c, v).is_empty()).collect();
            out["proper_vertices"] = vertices_json(&proper);
            let improper: serde_json::Map<String, Value> = (0..n)
                .filter_map(|v| {
                    let bad = improper_paths(&c, v);
                    (!bad.is_empty()).then(|| {
                        let triples: Vec<[usize; 3]> = bad.iter().map(|&(a, b, d)| [a + 1, b + 1, d + 1]).collect();
                        ((v + 1).to_string(), json!(triples))
                    })
                })
                .collect();
            out["improper_paths"] = Value::Object(improper);
            out["windings"] = Value::Array(
                c.basis_windings()
                    .into_iter()
                    .map(|(cycle, w)| json!({"cycle": vertices_json(cycle.vertices()), "winding": w}))
                    .collect(),
            );
            let s = summarize(&c);
            invariants["alexander"] = polynomial_json(&s.alexander);
            invariants["alexander_text"] = json!(s.alexander.to_string());
            invariants["markov"] = int_json(&s.markov);
            invariants["cosquare_charpoly"] = polynomial_json(&s.cosquare_charpoly);
        }
        out["invariants"] = invariants;
        if let State::Seed(s) = self {
            out["path"] = vertices_json(s.path());
            out["colors"] = colors_json(&s.colors()?);
            out["C"] = matrix_json(s.c());
            out["A"] = matrix_json(s.a());
            out["U"] = matrix_json(s.u());
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Session {
    pub id: String,
    pub request: CreateRequest,
    pub actions: Vec<Action>,
    pub history: Vec<State>,
}

impl Session {
    pub fn new(id: String, request: CreateRequest) -> Result<Self, SessionError> {
        let s0 = State::initial(&request)?;
        Ok(Session {
            id,
            request,
            actions: Vec::new(),
            history: vec![s0],
        })
    }

    /// Rebuild a session from its request and surviving actions.
    pub fn replay(id: String, request: CreateRequest, actions: &[Action]) -> Result<Self, SessionError> {
        let mut s = Session::new(id, request)?;
        for &a in actions {
            s.apply(a)?;
        }
        Ok(s)
    }

    pub fn current(&self) -> &State {
        self.history.last().expect("history is never empty")
    }

    pub fn apply(&mut self, action: Action) -> Result<(), SessionError> {
        let next = self.current().apply(action)?;
        self.actions.push(action);
        self.history.push(next);
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), SessionError> {
        if self.actions.is_empty() {
            return Err(SessionError::NothingToUndo);
        }
        self.actions.pop();
        self.history.pop();
        Ok(())
    }

    pub fn to_json(&self) -> Result<Value, SessionError> {
        Ok(json!({
            "id": self.id,
            "mode": self.request.mode,
            "step": self.actions.len(),
            "actions": self.actions,
            "state": self.current().to_json()?,
        }))
    }
}
