//! Typed async client for the game service.

use mbrg_core::api::{
    ApiError, CappedRequest, ErrorKind, GraphInfo, GraphRequest, MoveRequest, OutcomeResponse,
    PairingRequest, SolveRequest, SolveResponse, StrategyInfo, TheoremInfo, ValidateRequest,
    VerifyRequest, VerifyResponse,
};
use mbrg_core::game::GameNumbers;
use mbrg_core::resolving::MetricBasis;
use mbrg_core::session::{Hint, SessionConfig, SessionView};
use mbrg_core::strategy::ValidationReport;
use reqwest::{Method, StatusCode, Url};
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ClientError {
    #[error("invalid server URL `{0}`")]
    Url(String),
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
    /// The service answered with an error document.
    #[error("{status}: {error}")]
    Api { status: StatusCode, error: ApiError },
}

impl ClientError {
    pub fn api(&self) -> Option<&ApiError> {
        match self {
            ClientError::Api { error, .. } => Some(error),
            _ => None,
        }
    }
}

fn kind(status: StatusCode) -> ErrorKind {
    match status {
        StatusCode::NOT_FOUND => ErrorKind::NotFound,
        StatusCode::CONFLICT => ErrorKind::Conflict,
        s if s.is_server_error() => ErrorKind::Internal,
        _ => ErrorKind::BadRequest,
    }
}

#[derive(Debug, Clone)]
pub struct Client {
    base: Url,
    http: reqwest::Client,
}

impl Client {
    /// `base` such as `http://127.0.0.1:8080`.
    pub fn new(base: &str) -> Result<Self, ClientError> {
        let mut base = Url::parse(base).map_err(|_| ClientError::Url(base.into()))?;
        if base.cannot_be_a_base() {
            return Err(ClientError::Url(base.to_string()));
        }
        if !base.path().ends_with('/') {
            let path = format!("{}/", base.path());
            base.set_path(&path);
        }
        Ok(Client {
            base,
            http: reqwest::Client::new(),
        })
    }

    pub fn base(&self) -> &Url {
        &self.base
    }

    fn url(&self, path: &str, query: &[(&str, &str)]) -> Result<Url, ClientError> {
        let mut url = self
            .base
            .join(path)
            .map_err(|_| ClientError::Url(path.into()))?;
        if !query.is_empty() {
            url.query_pairs_mut().extend_pairs(query);
        }
        Ok(url)
    }

    async fn send<T: DeserializeOwned>(
        &self,
        method: Method,
        url: Url,
        body: Option<&(impl Serialize + ?Sized)>,
    ) -> Result<T, ClientError> {
        let mut req = self.http.request(method, url);
        if let Some(body) = body {
            req = req.json(body);
        }
        let resp = req.send().await?;
        let status = resp.status();
        if status.is_success() {
            return Ok(resp.json().await?);
        }
        let text = resp.text().await?;
        let error = match serde_json::from_str::<ApiError>(&text) {
            Ok(mut e) => {
                e.kind = kind(status);
                e
            }
            Err(_) => ApiError::new(kind(status), "http", text),
        };
        Err(ClientError::Api { status, error })
    }

    async fn get<T: DeserializeOwned>(
        &self,
        path: &str,
        query: &[(&str, &str)],
    ) -> Result<T, ClientError> {
        self.send(Method::GET, self.url(path, query)?, None::<&()>)
            .await
    }

    async fn post<T: DeserializeOwned>(
        &self,
        path: &str,
        body: &(impl Serialize + ?Sized),
    ) -> Result<T, ClientError> {
        self.send(Method::POST, self.url(path, &[])?, Some(body))
            .await
    }

    pub async fn health(&self) -> Result<(), ClientError> {
        self.get::<serde::de::IgnoredAny>("health", &[])
            .await
            .map(drop)
    }

    pub async fn theorems(&self) -> Result<Vec<TheoremInfo>, ClientError> {
        self.get("theorems", &[]).await
    }

    pub async fn strategies(&self, graph: Option<&str>) -> Result<Vec<StrategyInfo>, ClientError> {
        match graph {
            Some(g) => self.get("strategies", &[("graph", g)]).await,
            None => self.get("strategies", &[]).await,
        }
    }

    pub async fn graph_info(&self, req: &GraphRequest) -> Result<GraphInfo, ClientError> {
        self.post("graph", req).await
    }

    pub async fn dim(&self, req: &CappedRequest) -> Result<MetricBasis, ClientError> {
        self.post("dim", req).await
    }

    pub async fn outcome(&self, req: &CappedRequest) -> Result<OutcomeResponse, ClientError> {
        self.post("outcome", req).await
    }

    pub async fn solve(&self, req: &SolveRequest) -> Result<SolveResponse, ClientError> {
        self.post("solve", req).await
    }

    pub async fn numbers(&self, req: &CappedRequest) -> Result<GameNumbers, ClientError> {
        self.post("numbers", req).await
    }

    pub async fn pairing(
        &self,
        req: &PairingRequest,
    ) -> Result<mbrg_core::api::PairingResponse, ClientError> {
        self.post("pairing", req).await
    }

    pub async fn validate(
        &self,
        req: &ValidateRequest,
    ) -> Result<Vec<ValidationReport>, ClientError> {
        self.post("validate", req).await
    }

    pub async fn verify(&self, req: &VerifyRequest) -> Result<VerifyResponse, ClientError> {
        self.post("verify", req).await
    }

    pub async fn create_session(&self, config: &SessionConfig) -> Result<SessionView, ClientError> {
        self.post("sessions", config).await
    }

    pub async fn session(&self, id: &str) -> Result<SessionView, ClientError> {
        self.get(&format!("sessions/{id}"), &[]).await
    }

    pub async fn play(&self, id: &str, vertex: usize) -> Result<SessionView, ClientError> {
        self.post(&format!("sessions/{id}/moves"), &MoveRequest { vertex })
            .await
    }

    pub async fn undo(&self, id: &str) -> Result<SessionView, ClientError> {
        self.send(
            Method::POST,
            self.url(&format!("sessions/{id}/undo"), &[])?,
            None::<&()>,
        )
        .await
    }

    pub async fn hint(&self, id: &str, strategy: Option<&str>) -> Result<Hint, ClientError> {
        let path = format!("sessions/{id}/hint");
        match strategy {
            Some(s) => self.get(&path, &[("strategy", s)]).await,
            None => self.get(&path, &[]).await,
        }
    }
}
