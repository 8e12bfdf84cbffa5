"""Shared configuration for the verification lab."""
