"""Ornstein-Uhlenbeck price paths with counter-based shock streams"""
