"""Application layer - Use cases and port definitions.

This layer contains:
- Use Cases: run, convergence study, incidence sweep, mesh inspection,
  interface audit and resume
- Ports: Abstract interfaces for checkpoints, result series, field snapshots,
  case construction and patch-parallel execution
- DTOs: Frozen request/response objects and the assembled simulation case

The application layer depends only on the domain layer.
Infrastructure implementations are injected via ports.
"""
