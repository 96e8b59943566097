"""Test module for the voice agent API."""