//! The session HTTP API.

use std::collections::HashMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, Query, State as AxState};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use coqforge::catalog;
use coqforge::certify::{certify, BfsLimits, CertifyOptions};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::session::{Action, CreateRequest, Session, SessionError};

/// One line of a session's append-only log.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum LogEntry {
    Create { request: CreateRequest },
    Mutate { vertex: usize },
    Wiggle { u: usize, v: usize },
    Undo,
}

impl From<Action> for LogEntry {
    fn from(a: Action) -> Self {
        match a {
            Action::Mutate { vertex } => LogEntry::Mutate { vertex },
            Action::Wiggle { u, v } => LogEntry::Wiggle { u, v },
        }
    }
}

#[derive(Default)]
pub struct Store {
    sessions: RwLock<HashMap<String, Arc<Mutex<Session>>>>,
    dir: Option<PathBuf>,
}

pub type AppState = Arc<Store>;

impl Store {
    pub fn in_memory() -> Self {
        Store::default()
    }

    /// Sessions persisted under `dir` are replayed; unreadable logs are skipped
    /// with a message on stderr.
    pub fn persistent(dir: &Path) -> std::io::Result<Self> {
        fs::create_dir_all(dir)?;
        let mut sessions = HashMap::new();
        let mut files: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
            .collect();
        files.sort();
        for path in files {
            let id = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            match load_log(&id, &path) {
                Ok(s) => {
                    sessions.insert(id, Arc::new(Mutex::new(s)));
                }
                Err(e) => eprintln!("skipping session log {}: {e}", path.display()),
            }
        }
        Ok(Store {
            sessions: RwLock::new(sessions),
            dir: Some(dir.to_path_buf()),
        })
    }

    pub fn len(&self) -> usize {
        self.sessions.read().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, SessionError> {
        self.sessions
            .read()
            .expect("store lock")
            .get(id)
            .cloned()
            .ok_or_else(|| SessionError::NotFound(id.to_string()))
    }

    fn append(&self, id: &str, entry: &LogEntry) -> Result<(), SessionError> {
        let Some(dir) = &self.dir else {
            return Ok(());
        };
        let io =
            |e: std::io::Error| SessionError::Core(coqforge::Error::InvariantViolation(format!("session log: {e}")));
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(dir.join(format!("{id}.jsonl")))
            .map_err(io)?;
        let line = serde_json::to_string(entry).expect("log entries serialize");
        writeln!(f, "{line}").map_err(io)?;
        f.flush().map_err(io)
    }

    pub fn create(&self, request: CreateRequest) -> Result<Value, SessionError> {
        let id = uuid::Uuid::new_v4().simple().to_string();
        let session = Session::new(id.clone(), request.clone())?;
        self.append(&id, &LogEntry::Create { request })?;
        let view = session.to_json()?;
        self.sessions
            .write()
            .expect("store lock")
            .insert(id, Arc::new(Mutex::new(session)));
        Ok(view)
    }

    pub fn view(&self, id: &str) -> Result<Value, SessionError> {
        let s = self.get(id)?;
        let s = s.lock().expect("session lock");
        s.to_json()
    }

    pub fn act(&self, id: &str, action: Action) -> Result<Value, SessionError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session lock");
        s.apply(action)?;
        if let Err(e) = self.append(id, &action.into()) {
            s.undo().expect("action was just applied");
            return Err(e);
        }
        s.to_json()
    }

    pub fn undo(&self, id: &str) -> Result<Value, SessionError> {
        let s = self.get(id)?;
        let mut s = s.lock().expect("session lock");
        let action = *s.actions.last().ok_or(SessionError::NothingToUndo)?;
        s.undo()?;
        if let Err(e) = self.append(id, &LogEntry::Undo) {
            s.apply(action).expect("undone action replays");
            return Err(e);
        }
        s.to_json()
    }

    pub fn certify(&self, id: &str, opts: &CertifyOptions) -> Result<Value, SessionError> {
        let state = {
            let s = self.get(id)?;
            let s = s.lock().expect("session lock");
            s.current().clone()
        };
        let order = state.coq()?.map(|c| c.order().as_slice().to_vec());
        let report = certify(state.quiver(), order.as_deref(), opts)?;
        Ok(serde_json::to_value(report).expect("reports serialize"))
    }
}

fn load_log(id: &str, path: &Path) -> Result<Session, String> {
    let reader = BufReader::new(File::open(path).map_err(|e| e.to_string())?);
    let mut session: Option<Session> = None;
    for (k, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| e.to_string())?;
        if line.trim().is_empty() {
            continue;
        }
        let entry: LogEntry = serde_json::from_str(&line).map_err(|e| format!("line {}: {e}", k + 1))?;
        let err = |e: SessionError| format!("line {}: {}", k + 1, e.to_json());
        match (entry, session.as_mut()) {
            (LogEntry::Create { request }, None) => {
                session = Some(Session::new(id.to_string(), request).map_err(err)?);
            }
            (LogEntry::Mutate { vertex }, Some(s)) => s.apply(Action::Mutate { vertex }).map_err(err)?,
            (LogEntry::Wiggle { u, v }, Some(s)) => s.apply(Action::Wiggle { u, v }).map_err(err)?,
            (LogEntry::Undo, Some(s)) => s.undo().map_err(err)?,
            _ => return Err(format!("line {}: unexpected entry", k + 1)),
        }
    }
    session.ok_or_else(|| "empty log".to_string())
}

pub struct ApiError(SessionError);

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        ApiError(e)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        use coqforge::Error as E;
        let status = match &self.0 {
            SessionError::NotFound(_) => StatusCode::NOT_FOUND,
            SessionError::BadRequest(_) => StatusCode::BAD_REQUEST,
            SessionError::Core(E::Parse(_) | E::UnknownVertex(_)) => StatusCode::BAD_REQUEST,
            SessionError::Unsupported(_) | SessionError::NothingToUndo | SessionError::Core(_) => StatusCode::CONFLICT,
        };
        (status, Json(self.0.to_json())).into_response()
    }
}

type ApiResult = Result<Json<Value>, ApiError>;

fn parse_body<T: for<'de> Deserialize<'de>>(body: &[u8]) -> Result<T, ApiError> {
    serde_json::from_slice(body).map_err(|e| ApiError(SessionError::BadRequest(e.to_string())))
}

/// Runs a store call off the async executor; certification can take seconds.
async fn blocking<F>(f: F) -> ApiResult
where
    F: FnOnce() -> Result<Value, SessionError> + Send + 'static,
{
    match tokio::task::spawn_blocking(f).await {
        Ok(r) => r.map(Json).map_err(ApiError),
        Err(e) => Err(ApiError(SessionError::Core(coqforge::Error::InvariantViolation(
            e.to_string(),
        )))),
    }
}

async fn create(AxState(store): AxState<AppState>, body: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let req: CreateRequest = parse_body(&body)?;
    let v = blocking(move || store.create(req)).await?;
    Ok((StatusCode::CREATED, v))
}

async fn show(AxState(store): AxState<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult {
    blocking(move || store.view(&id)).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateBody {
    vertex: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WiggleBody {
    u: usize,
    v: usize,
}

async fn mutate(AxState(store): AxState<AppState>, UrlPath(id): UrlPath<String>, body: Bytes) -> ApiResult {
    let b: MutateBody = parse_body(&body)?;
    blocking(move || store.act(&id, Action::Mutate { vertex: b.vertex })).await
}

async fn wiggle(AxState(store): AxState<AppState>, UrlPath(id): UrlPath<String>, body: Bytes) -> ApiResult {
    let b: WiggleBody = parse_body(&body)?;
    blocking(move || store.act(&id, Action::Wiggle { u: b.u, v: b.v })).await
}

async fn undo(AxState(store): AxState<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult {
    blocking(move || store.undo(&id)).await
}

#[derive(Deserialize)]
struct CertifyQuery {
    depth: Option<usize>,
    entry_cap: Option<u64>,
    max_states: Option<usize>,
}

async fn certify_session(
    AxState(store): AxState<AppState>,
    UrlPath(id): UrlPath<String>,
    Query(q): Query<CertifyQuery>,
) -> ApiResult {
    let d = BfsLimits::default();
    let opts = CertifyOptions {
        bfs: BfsLimits {
            depth: q.depth.unwrap_or(d.depth),
            entry_cap: q.entry_cap.unwrap_or(d.entry_cap),
            max_states: q.max_states.unwrap_or(d.max_states),
        },
        ..CertifyOptions::default()
    };
    blocking(move || store.certify(&id, &opts)).await
}

async fn examples() -> Json<Value> {
    let names: Vec<&str> = catalog::entries::<coqforge::Int>().iter().map(|e| e.name).collect();
    Json(json!(names))
}

pub fn router(store: AppState) -> Router {
    Router::new()
        .route("/api/examples", get(examples))
        .route("/api/session", post(create))
        .route("/api/session/{id}", get(show))
        .route("/api/session/{id}/mutate", post(mutate))
        .route("/api/session/{id}/wiggle", post(wiggle))
        .route("/api/session/{id}/undo", post(undo))
        .route("/api/session/{id}/certify", get(certify_session))
        .with_state(store)
}

pub async fn serve(addr: std::net::SocketAddr, store: Store) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(store))).await
}
