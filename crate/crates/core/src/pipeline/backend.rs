//! External task backends: child processes and HTTP services.

use std::io::Read;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::validate::RESERVED_CONFIG_KEYS;

pub const DEFAULT_SERVICE_TIMEOUT: Duration = Duration::from_secs(300);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ServicePort {
    pub name: String,
    pub format: String,
    pub content: String,
}

#[derive(Debug, Serialize)]
struct ServiceRequest<'a> {
    task: &'a str,
    config: &'a Map<String, Value>,
    inputs: &'a [ServicePort],
}

#[derive(Debug, Deserialize)]
struct ServiceResponse {
    outputs: Vec<ServicePort>,
}

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("request to {endpoint} timed out after {seconds} s")]
    Timeout { endpoint: String, seconds: u64 },
    #[error("request to {endpoint} failed: {message}")]
    Transport { endpoint: String, message: String },
    #[error("service returned status {status}: {body}")]
    Status { status: u16, body: String },
    #[error("malformed service response: {0}")]
    BadResponse(String),
}

/// Config entries forwarded to external tasks (backend keys removed).
pub fn forwarded_config(config: &Map<String, Value>) -> Map<String, Value> {
    config
        .iter()
        .filter(|(k, _)| !RESERVED_CONFIG_KEYS.contains(&k.as_str()))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect()
}

/// POSTs the request envelope and returns the response outputs unchecked.
pub fn invoke_service_task(
    endpoint: &str,
    task: &str,
    inputs: &[ServicePort],
    config: &Map<String, Value>,
    timeout: Duration,
) -> Result<Vec<ServicePort>, ServiceError> {
    let body = serde_json::to_string(&ServiceRequest { task, config, inputs }).expect("request serializes");
    let agent: ureq::Agent =
        ureq::Agent::config_builder().timeout_global(Some(timeout)).http_status_as_error(false).build().into();
    let result = agent.post(endpoint).header("Content-Type", "application/json").send(body);
    let mut response = match result {
        Ok(r) => r,
        Err(ureq::Error::Timeout(_)) => {
            return Err(ServiceError::Timeout { endpoint: endpoint.to_string(), seconds: timeout.as_secs() })
        }
        Err(e) => return Err(ServiceError::Transport { endpoint: endpoint.to_string(), message: e.to_string() }),
    };
    let status = response.status().as_u16();
    let text = response.body_mut().with_config().limit(u64::MAX).read_to_string().map_err(|e| match e {
        ureq::Error::Timeout(_) => ServiceError::Timeout { endpoint: endpoint.to_string(), seconds: timeout.as_secs() },
        e => ServiceError::Transport { endpoint: endpoint.to_string(), message: e.to_string() },
    })?;
    if status != 200 {
        return Err(ServiceError::Status { status, body: text });
    }
    let parsed: ServiceResponse = serde_json::from_str(&text).map_err(|e| ServiceError::BadResponse(e.to_string()))?;
    Ok(parsed.outputs)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub stderr: String,
    pub peak_memory_bytes: Option<u64>,
}

fn render_flag(key: &str, value: &Value) -> String {
    match value {
        Value::String(s) => format!("--{key}={s}"),
        other => format!("--{key}={other}"),
    }
}

/// argv = command, input paths, output paths, then `--key=value` flags.
pub fn command_argv(
    command: &Value,
    inputs: &[PathBuf],
    outputs: &[PathBuf],
    config: &Map<String, Value>,
) -> Result<Vec<String>, String> {
    let mut argv: Vec<String> = match command {
        Value::String(s) if !s.is_empty() => vec![s.clone()],
        Value::Array(parts) if !parts.is_empty() => parts
            .iter()
            .map(|p| p.as_str().map(str::to_string).ok_or("command array must contain strings"))
            .collect::<Result<_, _>>()?,
        _ => return Err("config.command must be a string or array of strings".into()),
    };
    argv.extend(inputs.iter().chain(outputs).map(|p| p.display().to_string()));
    argv.extend(forwarded_config(config).iter().map(|(k, v)| render_flag(k, v)));
    Ok(argv)
}

/// Runs the child to completion, capturing stderr and (on Unix) its peak
/// resident set size.
pub fn run_command(argv: &[String]) -> Result<CommandOutcome, (String, String)> {
    let mut child = Command::new(&argv[0])
        .args(&argv[1..])
        .stdin(Stdio::null())
        .stdout(Stdio::null())
        .stderr(Stdio::piped())
        .spawn()
        .map_err(|e| (format!("failed to start {}: {e}", argv[0]), String::new()))?;
    let mut pipe = child.stderr.take().expect("stderr is piped");
    let reader = std::thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = pipe.read_to_end(&mut buf);
        String::from_utf8_lossy(&buf).into_owned()
    });
    let (success, code, peak) = wait_child(&mut child).map_err(|e| (e, String::new()))?;
    let stderr = reader.join().unwrap_or_default();
    if success {
        Ok(CommandOutcome { stderr, peak_memory_bytes: peak })
    } else {
        Err((format!("{} exited with {code}", argv[0]), stderr))
    }
}

#[cfg(unix)]
fn wait_child(child: &mut std::process::Child) -> Result<(bool, String, Option<u64>), String> {
    let pid = child.id() as libc::pid_t;
    let mut status: libc::c_int = 0;
    // SAFETY: rusage is plain old data; wait4 fills it for our own child.
    let mut usage: libc::rusage = unsafe { std::mem::zeroed() };
    let rc = loop {
        // SAFETY: pid is a child of this process that has not been reaped.
        let rc = unsafe { libc::wait4(pid, &mut status, 0, &mut usage) };
        if rc == -1 && std::io::Error::last_os_error().kind() == std::io::ErrorKind::Interrupted {
            continue;
        }
        break rc;
    };
    if rc == -1 {
        return Err(format!("wait4 failed: {}", std::io::Error::last_os_error()));
    }
    let maxrss = usage.ru_maxrss.max(0) as u64;
    let peak = if cfg!(target_os = "macos") { maxrss } else { maxrss * 1024 };
    let (success, code) = if libc::WIFEXITED(status) {
        let code = libc::WEXITSTATUS(status);
        (code == 0, format!("exit code {code}"))
    } else if libc::WIFSIGNALED(status) {
        (false, format!("signal {}", libc::WTERMSIG(status)))
    } else {
        (false, format!("status {status}"))
    };
    Ok((success, code, Some(peak)))
}

#[cfg(not(unix))]
fn wait_child(child: &mut std::process::Child) -> Result<(bool, String, Option<u64>), String> {
    let status = child.wait().map_err(|e| e.to_string())?;
    Ok((status.success(), status.to_string(), None))
}
