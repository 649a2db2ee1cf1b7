use std::sync::{Arc, Mutex};

use axum::extract::{Query, State};
use axum::http::{header, Method, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::json;
use tokio::net::TcpListener;
use tower_http::cors::{Any, CorsLayer};

use super::service::{Choice, Quiz, QuizError};

type Shared = Arc<Mutex<Quiz>>;

impl IntoResponse for QuizError {
    fn into_response(self) -> Response {
        let status = match &self {
            QuizError::UnknownPair(_) => StatusCode::NOT_FOUND,
            QuizError::NotServed(_) | QuizError::EmptySubject => StatusCode::BAD_REQUEST,
            QuizError::Duplicate(_) => StatusCode::CONFLICT,
            QuizError::Storage(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        (status, Json(json!({ "error": self.to_string() }))).into_response()
    }
}

#[derive(Deserialize)]
struct PairQuery {
    subject: String,
}

#[derive(Deserialize)]
struct JudgmentBody {
    subject_id: String,
    pair_id: String,
    chosen_position: Choice,
}

async fn get_pair(State(quiz): State<Shared>, Query(q): Query<PairQuery>) -> Response {
    let mut quiz = quiz.lock().expect("quiz lock");
    match quiz.next_pair(&q.subject) {
        Ok(p) => Json(p).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn post_judgment(State(quiz): State<Shared>, Json(j): Json<JudgmentBody>) -> Response {
    let mut quiz = quiz.lock().expect("quiz lock");
    match quiz.judge(&j.subject_id, &j.pair_id, j.chosen_position) {
        Ok(ack) => Json(ack).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn get_stats(State(quiz): State<Shared>) -> Response {
    let quiz = quiz.lock().expect("quiz lock");
    Json(quiz.stats()).into_response()
}

pub fn router(quiz: Quiz) -> Router {
    let cors = CorsLayer::new()
        .allow_origin(Any)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE]);
    Router::new()
        .route("/api/pair", get(get_pair))
        .route("/api/judgment", post(post_judgment))
        .route("/api/stats", get(get_stats))
        .layer(cors)
        .with_state(Arc::new(Mutex::new(quiz)))
}

/// Serves until ctrl-c.
pub async fn serve(listener: TcpListener, quiz: Quiz) -> std::io::Result<()> {
    axum::serve(listener, router(quiz))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
