//! The session HTTP API, driven in-process through the router.

use std::sync::Arc;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use coqforge::io::matrix_json;
use coqforge::{catalog, BigQuiver, Coq, Int, Seed};
use coqforge_cli::server::{router, Store};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<&str>) -> (StatusCode, Value) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes).unwrap()
    };
    (status, value)
}

async fn create(app: &Router, body: Value) -> (String, Value) {
    let (status, v) = call(app, "POST", "/api/session", Some(&body.to_string())).await;
    assert_eq!(status, StatusCode::CREATED, "{v}");
    (v["id"].as_str().unwrap().to_string(), v)
}

async fn mutate(app: &Router, id: &str, vertex: usize) -> (StatusCode, Value) {
    let body = json!({ "vertex": vertex }).to_string();
    call(app, "POST", &format!("/api/session/{id}/mutate"), Some(&body)).await
}

fn app() -> Router {
    router(Arc::new(Store::in_memory()))
}

fn as_i64(v: &Value) -> i64 {
    match v {
        Value::Number(n) => n.as_i64().unwrap(),
        Value::String(s) => s.parse().unwrap(),
        other => panic!("not an integer: {other}"),
    }
}

fn quiver_of(state: &Value) -> BigQuiver {
    let arrows: Vec<(usize, usize, i64)> = state["quiver"]["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| {
            (
                a[0].as_u64().unwrap() as usize - 1,
                a[1].as_u64().unwrap() as usize - 1,
                as_i64(&a[2]),
            )
        })
        .collect();
    BigQuiver::from_i64_arrows(state["n"].as_u64().unwrap() as usize, &arrows).unwrap()
}

fn order_of(state: &Value) -> Vec<usize> {
    state["order"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_u64().unwrap() as usize - 1)
        .collect()
}

fn wiggle_equivalent(state: &Value, arrows: &[(usize, usize, i64)], order: &[usize]) -> bool {
    let q = BigQuiver::from_i64_arrows(4, arrows).unwrap();
    assert_eq!(quiver_of(state), q);
    let got = Coq::new(q.clone(), order_of(state)).unwrap();
    got.wiggle_equivalent(&Coq::new(q, order.to_vec()).unwrap()).unwrap()
}

#[tokio::test]
async fn proper_mutation_sequence() {
    let app = app();
    let (id, created) = create(&app, json!({"example": "proper-sequence", "order": [1, 2, 3, 4]})).await;
    assert_eq!(created["mode"], "coq");
    assert_eq!(created["state"]["proper_vertices"], json!([1, 2, 3, 4]));
    let (s1, v1) = mutate(&app, &id, 1).await;
    assert_eq!(s1, StatusCode::OK, "{v1}");
    let (s2, v2) = mutate(&app, &id, 2).await;
    assert_eq!(s2, StatusCode::OK, "{v2}");
    assert!(wiggle_equivalent(
        &v2["state"],
        &[(0, 2, 1), (2, 3, 1), (1, 0, 1), (0, 3, 5), (3, 1, 2)],
        &[0, 2, 3, 1]
    ));
    let (s3, v3) = mutate(&app, &id, 3).await;
    assert_eq!(s3, StatusCode::OK, "{v3}");
    assert!(wiggle_equivalent(
        &v3["state"],
        &[(1, 0, 1), (2, 0, 1), (3, 2, 1), (3, 1, 2), (0, 3, 6)],
        &[0, 3, 2, 1]
    ));
    assert_eq!(v3["step"], 3);
    // Δ is a mutation invariant along proper mutations.
    let delta = &created["state"]["invariants"]["alexander"];
    for v in [&v1, &v2, &v3] {
        assert_eq!(&v["state"]["invariants"]["alexander"], delta);
    }
    let (status, shown) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(shown, v3);
}

#[tokio::test]
async fn improper_vertex_is_a_conflict_with_the_failing_turn() {
    let app = app();
    let triangle = json!({"n": 3, "arrows": [[1, 2, 1], [2, 3, 1], [3, 1, 1]]});
    let (id, created) = create(&app, json!({"quiver": triangle, "order": [1, 3, 2]})).await;
    assert_eq!(created["state"]["improper_paths"]["2"], json!([[1, 2, 3]]));
    let (status, err) = mutate(&app, &id, 2).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "NotProper");
    assert_eq!(err["vertex"], 2);
    assert_eq!(err["violations"], json!([[1, 2, 3]]));
    // The rejected action leaves the session untouched.
    let (_, shown) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(shown["step"], 0);
    assert_eq!(shown, created);
}

#[tokio::test]
async fn errors_map_to_status_codes() {
    let app = app();
    let (status, err) = call(&app, "GET", "/api/session/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(err["error"], "NotFound");
    let (status, _) = call(&app, "POST", "/api/session/nope/mutate", Some(r#"{"vertex": 1}"#)).await;
    assert_eq!(status, StatusCode::NOT_FOUND);

    let (status, err) = call(&app, "POST", "/api/session", Some("{not json")).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(err["error"], "BadRequest");
    let (status, _) = call(&app, "POST", "/api/session", Some(r#"{"example": "no-such-quiver"}"#)).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(
        &app,
        "POST",
        "/api/session",
        Some(r#"{"quiver": {"n": 2, "arrows": [[1, 5, 1]]}}"#),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (id, _) = create(&app, json!({"example": "markov"})).await;
    let (status, _) = call(
        &app,
        "POST",
        &format!("/api/session/{id}/mutate"),
        Some(r#"{"vertx": 1}"#),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = mutate(&app, &id, 9).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, err) = call(&app, "POST", &format!("/api/session/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"], "NothingToUndo");
}

#[tokio::test]
async fn undo_restores_the_previous_state_exactly() {
    let app = app();
    let (id, s0) = create(&app, json!({"example": "e6", "mode": "seed"})).await;
    let mut states = vec![s0];
    for v in [1, 2, 1, 4] {
        let (status, s) = mutate(&app, &id, v).await;
        assert_eq!(status, StatusCode::OK, "{s}");
        states.push(s);
    }
    for k in (0..states.len() - 1).rev() {
        let (status, s) = call(&app, "POST", &format!("/api/session/{id}/undo"), None).await;
        assert_eq!(status, StatusCode::OK);
        assert_eq!(s, states[k], "after undo to step {k}");
    }
}

#[tokio::test]
async fn sessions_equal_a_fresh_replay_of_their_actions() {
    let app = app();
    let (a, _) = create(
        &app,
        json!({"example": "hexagon", "mode": "quiver", "order": [1, 2, 3, 4, 5, 6]}),
    )
    .await;
    for v in [2, 5, 3] {
        assert_eq!(mutate(&app, &a, v).await.0, StatusCode::OK);
    }
    let (status, _) = call(&app, "POST", &format!("/api/session/{a}/undo"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(mutate(&app, &a, 6).await.0, StatusCode::OK);
    let (_, long) = call(&app, "GET", &format!("/api/session/{a}"), None).await;

    let (b, _) = create(
        &app,
        json!({"example": "hexagon", "mode": "quiver", "order": [1, 2, 3, 4, 5, 6]}),
    )
    .await;
    for v in [2, 5, 6] {
        assert_eq!(mutate(&app, &b, v).await.0, StatusCode::OK);
    }
    let (_, fresh) = call(&app, "GET", &format!("/api/session/{b}"), None).await;
    assert_eq!(long["state"], fresh["state"]);
    assert_eq!(long["actions"], fresh["actions"]);
    assert_eq!(
        long["actions"],
        json!([{"op": "mutate", "vertex": 2}, {"op": "mutate", "vertex": 5}, {"op": "mutate", "vertex": 6}])
    );
}

#[tokio::test]
async fn wiggles_change_the_order_only() {
    let app = app();
    let (id, s0) = create(&app, json!({"example": "four-vertex"})).await;
    // v2 and v3 are not adjacent, so they may trade places.
    let (status, s1) = call(
        &app,
        "POST",
        &format!("/api/session/{id}/wiggle"),
        Some(r#"{"u": 2, "v": 3}"#),
    )
    .await;
    assert_eq!(status, StatusCode::OK, "{s1}");
    assert_eq!(s1["state"]["order"], json!([1, 3, 2, 4]));
    assert_eq!(s1["state"]["B"], s0["state"]["B"]);
    assert_eq!(s1["state"]["invariants"], s0["state"]["invariants"]);
    let (status, err) = call(
        &app,
        "POST",
        &format!("/api/session/{id}/wiggle"),
        Some(r#"{"u": 1, "v": 2}"#),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT, "{err}");
}

#[tokio::test]
async fn seed_sessions_report_the_tracked_matrices() {
    let app = app();
    // The example carries its mutation path, so the session starts at its end.
    let (id, created) = create(&app, json!({"example": "e6", "mode": "seed"})).await;
    let state = &created["state"];
    assert_eq!(state["path"], json!([3, 2, 5, 4, 2, 1]));
    let c: Vec<Vec<i64>> = state["C"]
        .as_array()
        .unwrap()
        .iter()
        .map(|row| row.as_array().unwrap().iter().map(as_i64).collect())
        .collect();
    assert_eq!(
        c,
        vec![
            vec![-1, 0, 0, 0, 0, 1],
            vec![0, 0, 0, -1, 0, 1],
            vec![0, -1, 0, 0, 0, 1],
            vec![0, -1, 1, 0, 0, 0],
            vec![0, 0, 0, 0, -1, 0],
            vec![0, 0, 0, 0, 0, 1],
        ]
    );
    let colors = state["colors"].as_array().unwrap();
    let green: Vec<usize> = (0..6).filter(|&i| colors[i] == "green").map(|i| i + 1).collect();
    assert_eq!(green, vec![3, 6]);
    let (status, err) = call(
        &app,
        "POST",
        &format!("/api/session/{id}/wiggle"),
        Some(r#"{"u": 1, "v": 2}"#),
    )
    .await;
    assert_eq!(status, StatusCode::CONFLICT, "{err}");
    // One more seed mutation matches the library's seed for the extended path.
    let (status, next) = mutate(&app, &id, 1).await;
    assert_eq!(status, StatusCode::OK, "{next}");
    let mut path = catalog::E6_PATH.to_vec();
    path.push(0);
    let seed = Seed::replay(&catalog::e6::<Int>(), &path).unwrap();
    for (key, m) in [("B", seed.b()), ("C", seed.c()), ("A", seed.a()), ("U", seed.u())] {
        assert_eq!(next["state"][key], matrix_json(m), "{key}");
    }
}

#[tokio::test]
async fn certify_endpoint_uses_the_session_state() {
    let app = app();
    let (t58, _) = create(&app, json!({"example": "t58", "mode": "quiver"})).await;
    let (status, rep) = call(&app, "GET", &format!("/api/session/{t58}/certify"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(rep["verdict"], "MutationAcyclic");
    assert_eq!(rep["witness_path"], json!([2, 1]));
    // A search too shallow to reach the acyclic member is inconclusive.
    let (_, shallow) = call(&app, "GET", &format!("/api/session/{t58}/certify?depth=1"), None).await;
    assert_eq!(shallow["verdict"], "Inconclusive");

    let (somos, _) = create(&app, json!({"example": "somos4"})).await;
    let (_, rep) = call(&app, "GET", &format!("/api/session/{somos}/certify"), None).await;
    assert_eq!(rep["verdict"], "NotMutationAcyclic");
    assert_eq!(rep["obstruction"], "MarkovLowerBound");
}

#[tokio::test]
async fn examples_are_listed() {
    let (status, v) = call(&app(), "GET", "/api/examples", None).await;
    assert_eq!(status, StatusCode::OK);
    let names: Vec<&str> = v.as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    for name in ["t58", "four-vertex", "e6", "somos4", "e7-11", "e8-11", "pentagon-apex"] {
        assert!(names.contains(&name), "{name} missing");
    }
}

#[tokio::test]
async fn persistent_sessions_survive_a_restart() {
    let dir = tempfile::tempdir().unwrap();
    let (id, before) = {
        let app = router(Arc::new(Store::persistent(dir.path()).unwrap()));
        let (id, _) = create(&app, json!({"example": "proper-sequence"})).await;
        for v in [1, 2] {
            assert_eq!(mutate(&app, &id, v).await.0, StatusCode::OK);
        }
        assert_eq!(
            call(&app, "POST", &format!("/api/session/{id}/undo"), None).await.0,
            StatusCode::OK
        );
        assert_eq!(mutate(&app, &id, 3).await.0, StatusCode::OK);
        let (_, before) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
        (id, before)
    };
    let store = Store::persistent(dir.path()).unwrap();
    assert_eq!(store.len(), 1);
    let app = router(Arc::new(store));
    let (status, after) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(after, before);
}

#[tokio::test]
async fn concurrent_sessions_do_not_interfere() {
    let app = app();
    let mut ids = Vec::new();
    for _ in 0..8 {
        ids.push(create(&app, json!({"example": "markov", "mode": "quiver"})).await.0);
    }
    let tasks: Vec<_> = ids
        .iter()
        .enumerate()
        .map(|(k, id)| {
            let app = app.clone();
            let id = id.clone();
            tokio::spawn(async move {
                for step in 0..k {
                    assert_eq!(mutate(&app, &id, step % 3 + 1).await.0, StatusCode::OK);
                }
            })
        })
        .collect();
    for t in tasks {
        t.await.unwrap();
    }
    for (k, id) in ids.iter().enumerate() {
        let (_, v) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
        assert_eq!(v["step"], k);
    }
}
